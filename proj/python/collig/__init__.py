"""Unitary colligations and rational inner functions between matrix balls."""

try:
    from ._collig import *  # noqa: F401,F403
    from ._collig import __doc__  # noqa: F401
except ImportError:  # in-tree build: the extension sits next to the build outputs
    from _collig import *  # type: ignore  # noqa: F401,F403
