"""
Library-wide settings.
"""
from fractions import Fraction

report_version = "1.0"

# support enumeration is exhaustive, keep games small
oracle_max_strategies = 4

adjacency_resolution = Fraction(1, 8)

svg_canvas_size = 600
svg_arrow_colors = ("red", "blue", "violet")
svg_fill_opacity = "0.15"
decimal_places = 6

sampler_default_count = 100
sampler_default_seed = 0
sampler_default_denominator = 4
exhaustive_entries = (0, 1, 2)

# The following getter functions are read at call time so that settings can
# be changed (or patched in tests) after import

def get_report_version():
    return report_version

def get_oracle_max_strategies():
    return oracle_max_strategies

def get_adjacency_resolution():
    return adjacency_resolution

def get_svg_canvas_size():
    return svg_canvas_size

def get_svg_arrow_colors():
    return svg_arrow_colors

def get_svg_fill_opacity():
    return svg_fill_opacity

def get_decimal_places():
    return decimal_places

def get_exhaustive_entries():
    return exhaustive_entries
