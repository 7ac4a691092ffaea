"""Ramsey theorems for binary trees, from the C++ core."""

try:
    from ._ramsey import *  # noqa: F401,F403  (installed wheel layout)
    from . import _ramsey as _core
except ImportError:  # pragma: no cover - build-tree layout
    from _ramsey import *  # noqa: F401,F403
    import _ramsey as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
