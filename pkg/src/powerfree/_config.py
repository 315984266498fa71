import os

_FALSY = {"0", "false", "no", "off"}


def jit_enabled():
    """True unless ``POWERFREE_JIT`` is set to a falsy value or numba is missing."""
    if os.environ.get("POWERFREE_JIT", "1").strip().lower() in _FALSY:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)
