"""Figures from the CSV files written by `heegner scan`."""

from .render import FigureKind, FigureSpec, SchemaError, EmptyInputError, render

__all__ = ["FigureKind", "FigureSpec", "SchemaError", "EmptyInputError", "render"]
