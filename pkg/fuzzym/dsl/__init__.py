from .lexer import *  # noqa: F403
from .parser import *  # noqa: F403
from .serializer import *  # noqa: F403
