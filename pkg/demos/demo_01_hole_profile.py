"""Burn a spectral hole and compare it with the closed-form model.

Sweeps the final target-state population P3 over the per-ion detuning for two
pulse amplitudes, overlays the analytic transfer profile, and marks the
predicted plateau edge. Run from anywhere; writes hole_profile.png to the
current directory.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import holeburn as hb

SQRT2 = math.sqrt(2.0)

fig, ax = plt.subplots(figsize=(8, 5))

for omega_max, color in ((10.0, "tab:blue"), (20.0, "tab:red")):
    model = hb.AnalyticHoleModel.from_pulses(omega_max, SQRT2)
    edge = hb.delta_edge(model)
    print(f"peak amplitude {omega_max:g}/sigma: midpoint omega0 = {model.omega0:.2f}, "
          f"predicted plateau edge = {edge:.1f}/sigma")

    deltas = np.arange(0.0, 3.0 * edge, max(edge / 40, 0.5))
    grid = hb.SweepGrid(delta_values=tuple(deltas))
    result = hb.run_sweep(grid, hb.ProtocolSpec(burn_omega_max=omega_max),
                          hb.SystemParams())

    # exact dynamics is even in the detuning, so mirror the positive half
    ax.plot(np.concatenate([-deltas[::-1], deltas]),
            np.concatenate([result.p3[::-1], result.p3]),
            color=color, label=f"numeric, amplitude {omega_max:g}")
    analytic = [hb.analytic_p3(d, model) for d in deltas]
    ax.plot(np.concatenate([-deltas[::-1], deltas]),
            np.concatenate([analytic[::-1], analytic]),
            color=color, linestyle=":", alpha=0.7,
            label=f"closed form, amplitude {omega_max:g}")
    ax.axvline(edge, color=color, linestyle="--", alpha=0.4)
    ax.axvline(-edge, color=color, linestyle="--", alpha=0.4)

    inside = deltas < 0.85 * edge
    print(f"  plateau check: min P3 inside 0.85 * edge = {result.p3[inside].min():.4f}")
    half = deltas[result.p3 >= 0.5]
    print(f"  numeric half-maximum reach ~ {half[-1]:.0f}/sigma "
          f"({half[-1] / edge:.1f} x the predicted edge; the off-resonant "
          f"Raman tail decays like exp(-c/delta), much slower than the "
          f"closed-form sinc)")

ax.set_xlabel("detuning (1/sigma)")
ax.set_ylabel("final population of the target state")
ax.set_title("Hole profiles: exact dynamics vs closed-form model")
ax.legend(fontsize="small")
ax.grid(alpha=0.3)
fig.tight_layout()
fig.savefig("hole_profile.png", dpi=150)
print("saved hole_profile.png")
