try:
    from ._apnspectra import *  # noqa: F401,F403
    from ._apnspectra import __doc__  # noqa: F401
except ImportError:  # in-tree builds place the module next to the package
    from _apnspectra import *  # noqa: F401,F403
