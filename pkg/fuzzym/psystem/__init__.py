from .engine import *  # noqa: F403
from .system import *  # noqa: F403
