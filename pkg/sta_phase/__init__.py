from . import algorithms
from . import tools
from ._version import __version__
