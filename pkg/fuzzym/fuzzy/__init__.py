from .multisets import *  # noqa: F403
from .norms import *  # noqa: F403
from .sets import *  # noqa: F403
