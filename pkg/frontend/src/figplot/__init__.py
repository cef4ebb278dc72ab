"""Figure rendering for twoatom sweep CSV files."""

from .render import FIGURES, FigureSpec, SchemaError, load_sweep, main, render

__all__ = ["FIGURES", "FigureSpec", "SchemaError", "load_sweep", "main", "render"]
