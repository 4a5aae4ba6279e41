from .dsl import *  # noqa: F403
from .ftm import *  # noqa: F403
from .fuzzy import *  # noqa: F403
from .psystem import *  # noqa: F403
from .violations import *  # noqa: F403
