"""Factor second-order equations into first-order operator brackets.

Writing u'' + gamma u' + F(u) = 0 as [D - phi2][D - phi1] u = 0 requires
phi1*phi2 = F/u and a constant friction u*phi1' + phi1 + phi2 = -gamma.
Splitting F/u into binomial templates and matching coefficients fixes the
scale and quantizes the velocity: each family admits exactly one +/- pair
of gammas.  This script walks the catalogue and prints the brackets, the
velocities, and the equivalent sum-form (Berkovich-style) factor pair.
"""

from kinkfactor import berkovich_convert, expand_grouping
from kinkfactor.presets import STANDARD_PRESETS, parse_preset, run_pipeline

for preset_id in STANDARD_PRESETS:
    preset = parse_preset(preset_id)
    result = run_pipeline(preset)
    pair = result.pair
    print(f"== {preset.id}")
    print(f"   F(u)/u     = {preset.F_over_u()}")
    print(f"   velocities = {[round(p.gamma, 12) for p in result.pairs]}")
    print(f"   phi1       = {pair.phi1}")
    print(f"   phi2       = {pair.phi2}")
    print(f"   scale a    = {pair.scale_a:.12g}")
    print(f"   equation   = {expand_grouping(pair)}")
    f1b, f2b = berkovich_convert(pair)
    print(f"   sum form   : f1b = {f1b}")
    print(f"                f2b = {f2b}   (f1b + f2b = {-pair.gamma:.12g})")
    print()
