"""How fast the localized-magnon energy converges with circuit depth.

Warm-started sweeps show exponential convergence of E*(d) toward the
band-averaged energy until the ansatz becomes exactly expressive
(around d = N/2 for this chain), where the error drops to rounding level.
"""
import numpy as np

from qpband import (InitialState, ModelSpec, VqeConfig, band_extract,
                    cached_spectrum, depth_sweep)

N, SEED = 9, 7
center = (N + 1) // 2
depths = range(1, 9)

rows = {}
for ratio in (0.3, 0.7):
    model = ModelSpec.plain(N, ratio, 1.0)
    target = band_extract(cached_spectrum(model), "magnon").energies.mean()
    sweep = depth_sweep(model, InitialState.spin_flip(center), depths, VqeConfig(seed=SEED))
    rows[ratio] = [run.energy - target for _, run in sweep]

print(f"excess energy E*(d) - mean band energy, N = {N}")
print(f"{'d':>3} {'J/h = 0.3':>14} {'J/h = 0.7':>14}")
for i, d in enumerate(depths):
    print(f"{d:>3} {rows[0.3][i]:>14.3e} {rows[0.7][i]:>14.3e}")

print("\nper-depth decay factors before saturation:")
for ratio in rows:
    errs = np.array(rows[ratio])
    live = errs[errs > 1e-12]
    factors = live[1:] / live[:-1]
    print(f"  J/h = {ratio}: {np.array2string(factors, precision=3)}")
