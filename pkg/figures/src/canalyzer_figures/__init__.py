from .render import FigureSpec, PANELS, render

__version__ = "0.1.0"

__all__ = ["FigureSpec", "PANELS", "render", "__version__"]
