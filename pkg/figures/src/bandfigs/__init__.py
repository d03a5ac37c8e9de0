"""Figure panels for the quasiparticle-band result tables.

Reads the fixed-schema CSV files the simulation CLI emits and renders the
panels; no physics is recomputed here.
"""

__version__ = "0.1.0"

from .io import FIGURE_INPUTS, FigureSpec, SchemaError, load_table, quantity
from .panels import render
