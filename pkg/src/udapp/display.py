"""Display-list commands: the ordered drawing contract shared by the SVG
renderer and any interactive front end."""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import RectBounds

Color = tuple[int, int, int, int]  # RGBA, 0-255 each

BLACK: Color = (0, 0, 0, 255)
OUTLINE: Color = (70, 70, 70, 255)


@dataclass(frozen=True)
class Font:
    family: str = "sans-serif"
    size: float = 12.0
    bold: bool = False
    italic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "size", float(self.size))
        if self.size <= 0:
            raise ValueError("font size must be positive")


@dataclass(frozen=True)
class FillRect:
    bounds: RectBounds
    color: Color


@dataclass(frozen=True)
class StrokeRect:
    bounds: RectBounds
    color: Color


@dataclass(frozen=True)
class Text:
    x: float
    y: float
    text: str
    font: Font
    color: Color


@dataclass(frozen=True)
class Polyline:
    points: tuple[tuple[float, float], ...]
    color: Color

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((float(x), float(y)) for x, y in self.points))


@dataclass(frozen=True)
class Frame:
    """Elastic-group frame: dashed border plus a title on the top edge."""

    bounds: RectBounds
    title: str
    color: Color


Command = FillRect | StrokeRect | Text | Polyline | Frame


def check_color(color) -> Color:
    if (
        not isinstance(color, (tuple, list))
        or len(color) != 4
        or not all(isinstance(c, int) and 0 <= c <= 255 for c in color)
    ):
        raise ValueError(f"bad RGBA color: {color!r}")
    return tuple(color)
