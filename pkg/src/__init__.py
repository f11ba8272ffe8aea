"""Minimal surfaces in H²×R: catenoids, parabolic catenoids and tall rectangles"""

__version__ = "0.1.0"
