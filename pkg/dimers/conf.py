"""
Snake Graph Dimer Models Settings

Application settings read from ``settings.DIMERS_SETTINGS`` with defaults.
"""

from django.conf import settings

DEFAULTS = {
    'ENUMERATION_GUARD': 10 ** 6,
    'CLASS_ENUMERATION_LIMIT': 10,
    'MATCHING_VERTEX_LIMIT': 200,
    'QPOLY_N_LIMIT': 12,
    'DOT_RANKDIR': 'BT',
}


def get_setting(name):
    """Return one DIMERS_SETTINGS entry, falling back to the default."""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown dimers setting: {name}")
    overrides = getattr(settings, 'DIMERS_SETTINGS', {}) if settings.configured else {}
    return overrides.get(name, DEFAULTS[name])
