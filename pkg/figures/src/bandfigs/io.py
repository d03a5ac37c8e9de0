"""Loading and validation of the simulation result tables."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import pandas as pd

SCHEMA_COLUMNS = [
    "experiment",
    "n",
    "j",
    "h",
    "depth",
    "seed",
    "momentum_index",
    "quantity_name",
    "value_real",
    "value_imag",
]

FIGURE_IDS = (
    "fig2a",
    "fig2b",
    "fig3",
    "fig4a",
    "fig4b",
    "fig5a-profiles",
    "fig5b",
    "figA-phases",
    "figA-weights",
    "figB-spectrum",
)

# experiment CSVs each panel consumes, by the emitting experiment's name
FIGURE_INPUTS: dict[str, tuple[str, ...]] = {
    "fig2a": ("gap-sweep",),
    "fig2b": ("gap-sweep",),
    "fig3": ("convergence",),
    "fig4a": ("bandwidth",),
    "fig4b": ("magnon-band",),
    "fig5a-profiles": ("wannier-profile",),
    "fig5b": ("soliton-band",),
    "figA-phases": ("phase-stats",),
    "figA-weights": ("phase-stats", "weights"),
    "figB-spectrum": ("twisted-spectrum",),
}


class SchemaError(ValueError):
    """A result file does not look like the expected table."""


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    inputs: dict[str, Path]
    output: Path

    @classmethod
    def from_data_dir(cls, figure_id: str, data_dir, output) -> "FigureSpec":
        if figure_id not in FIGURE_INPUTS:
            raise SchemaError(f"unknown figure id {figure_id!r}; pick from {sorted(FIGURE_INPUTS)}")
        data_dir = Path(data_dir)
        inputs = {name: data_dir / f"{name}.csv" for name in FIGURE_INPUTS[figure_id]}
        return cls(figure_id, inputs, Path(output))


def load_table(path) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path}: no such result file")
    df = pd.read_csv(path)
    if list(df.columns) != SCHEMA_COLUMNS:
        raise SchemaError(
            f"{path}: expected columns {SCHEMA_COLUMNS}, found {list(df.columns)}"
        )
    if df.empty:
        raise SchemaError(f"{path}: table has a header but no rows")
    return df


def quantity(df: pd.DataFrame, name: str, **filters) -> pd.DataFrame:
    """Rows of one quantity, optionally filtered by column values, index-sorted."""
    out = df[df["quantity_name"] == name]
    for column, value in filters.items():
        out = out[out[column] == value]
    if out.empty:
        raise SchemaError(f"no rows for quantity {name!r} with {filters or 'no filters'}")
    return out.sort_values("momentum_index")
