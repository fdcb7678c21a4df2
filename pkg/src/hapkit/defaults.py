"""The one table of numeric defaults shared by the library and the command line."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Defaults:
    bound: int = 16  # quantifier bound B
    fuel: int = 100_000  # evaluation steps per term
    cond_len: int = 2  # longest forcing condition in a condition quantifier's domain
    eps_bound: int = 32  # search bound for command-line oracle declarations without one


DEFAULTS = Defaults()
