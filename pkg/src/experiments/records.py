"""CSV persistence of experiment records."""

from pathlib import Path
from typing import Iterable

import pandas as pd

from ..models import ExperimentRecord
from ..utils.errors import DocumentFormatError

COLUMNS = ["preset", "slices", "sfcs", "nfs", "nodes", "seed", "active_nodes", "solve_time_s", "status"]


def records_frame(records: Iterable[ExperimentRecord]) -> pd.DataFrame:
    return pd.DataFrame([record.model_dump() for record in records], columns=COLUMNS)


def write_records(records: Iterable[ExperimentRecord], path: Path | str) -> None:
    records_frame(records).to_csv(path, index=False)


def read_records(path: Path | str) -> list[ExperimentRecord]:
    """
    Raises:
        DocumentFormatError: if the file is unreadable or its header differs.
    """
    try:
        frame = pd.read_csv(path, dtype={"preset": str, "status": str, "seed": "uint64"})
    except (OSError, ValueError) as e:
        raise DocumentFormatError(f"{path}: {e}") from e
    if list(frame.columns) != COLUMNS:
        raise DocumentFormatError(f"{path}: expected header {','.join(COLUMNS)}")

    return [
        ExperimentRecord(
            preset=str(row.preset),
            slices=int(row.slices),
            sfcs=int(row.sfcs),
            nfs=int(row.nfs),
            nodes=int(row.nodes),
            seed=int(row.seed),
            active_nodes=int(row.active_nodes),
            solve_time_s=float(row.solve_time_s),
            status=str(row.status),
        )
        for row in frame.itertuples(index=False)
    ]
