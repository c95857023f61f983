import os

from .errors import InputTooLargeError

DEFAULT_FACE_RANK = 6
DEFAULT_PAN_RANK = 4
MAX_SUBPANS = 4


def _env_rank():
    raw = os.environ.get("LOGCONE_MAX_RANK")
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"LOGCONE_MAX_RANK must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("LOGCONE_MAX_RANK must be non-negative")
    return value


def max_face_rank():
    """Largest lattice rank accepted by face enumeration and Hilbert bases."""
    env = _env_rank()
    return DEFAULT_FACE_RANK if env is None else env


def max_pan_rank():
    """Largest lattice rank accepted by pan refinement."""
    env = _env_rank()
    return DEFAULT_PAN_RANK if env is None else env


def guard_face_rank(rank, what="face enumeration"):
    limit = max_face_rank()
    if rank > limit:
        raise InputTooLargeError(f"{what}: rank {rank} exceeds the guard {limit}")


def guard_pan_rank(rank, what="pan refinement"):
    limit = max_pan_rank()
    if rank > limit:
        raise InputTooLargeError(f"{what}: rank {rank} exceeds the guard {limit}")
