import re

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*'*$")

DEFAULTS = {
    "LPALGEBRA_IRREDUCIBILITY_BUDGET": 12,
    "LPALGEBRA_MAX_NODES": 5000,
    "LPALGEBRA_MAX_DEPTH": None,
    "LPALGEBRA_JOBS": 1,
    "LPALGEBRA_RANDOM_SEED": 42,
    "LPALGEBRA_FRESH_VARIABLE": "__t",
    "LPALGEBRA_LAMINATION_SIGN": 1,
}


def get_lpalgebra_setting(key):
    """
    Return the effective value of an ``LPALGEBRA_*`` setting, falling back to the
    package default when the project does not define it.
    """
    if key not in DEFAULTS:
        raise KeyError(key)
    return getattr(settings, key, DEFAULTS[key])


def _check_positive_int(key, allow_none=False):
    value = get_lpalgebra_setting(key)
    if value is None and allow_none:
        return
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ImproperlyConfigured("{} should be a positive integer, got {!r}".format(key, value))


def check_settings():
    for key in ("LPALGEBRA_IRREDUCIBILITY_BUDGET", "LPALGEBRA_MAX_NODES", "LPALGEBRA_JOBS"):
        _check_positive_int(key)
    _check_positive_int("LPALGEBRA_MAX_DEPTH", allow_none=True)

    if not isinstance(get_lpalgebra_setting("LPALGEBRA_RANDOM_SEED"), int):
        raise ImproperlyConfigured("LPALGEBRA_RANDOM_SEED should be an integer")

    if get_lpalgebra_setting("LPALGEBRA_LAMINATION_SIGN") not in (1, -1):
        raise ImproperlyConfigured("LPALGEBRA_LAMINATION_SIGN should be either 1 or -1")

    fresh = get_lpalgebra_setting("LPALGEBRA_FRESH_VARIABLE")
    if not isinstance(fresh, str) or not NAME_RE.match(fresh):
        raise ImproperlyConfigured(
            "LPALGEBRA_FRESH_VARIABLE should be a valid variable name, got {!r}".format(fresh)
        )
