from ._kdclique import *  # noqa: F401,F403
