"""Figure rendering for the spatial-reuse simulator's CSV datasets."""

from .datasets import SCHEMAS, Dataset, SchemaError, load_dataset
from .render import KINDS, FigureSpec, build_figure, drawing_summary, render

__all__ = ["SCHEMAS", "Dataset", "SchemaError", "load_dataset",
           "KINDS", "FigureSpec", "build_figure", "drawing_summary", "render"]
