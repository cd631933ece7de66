import pathlib
import sys

# Let the suite run straight from a checkout even without installation
# (the compiled kernel is optional; the numpy fallback kicks in).
_SRC = pathlib.Path(__file__).resolve().parent.parent / "src"
try:
    import geophase  # noqa: F401
except ImportError:
    sys.path.insert(0, str(_SRC))
