"""udapp: a deterministic direct-manipulation engine.

Every screen element is movable and resizable through invisible covers and
a single Catch/Move/Release mover; elastic groups follow their members;
layouts persist per element.  Ships with three demo apps and a headless
replay harness.
"""

from .geometry import Point, RectBounds, SizeRange
from .mover import Mover
from .scene import Scene

__all__ = ["Point", "RectBounds", "SizeRange", "Scene", "Mover"]
__version__ = "0.1.0"
