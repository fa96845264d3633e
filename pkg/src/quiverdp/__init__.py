"""quiverdp - semi-invariants of mixed quiver representations"""

__version__ = "0.1.0"
