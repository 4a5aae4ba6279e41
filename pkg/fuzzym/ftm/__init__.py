from .acceptance import *  # noqa: F403
from .configuration import *  # noqa: F403
from .machine import *  # noqa: F403
