"""Dressed-state picture of one adiabatic transfer.

Plots the instantaneous eigenenergies, the mixing angle and the adiabaticity
margin across a single counterintuitive pulse pair, for a resonant ion and a
detuned one. No propagation involved; everything is closed form. Writes
dressed_states.png.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import holeburn as hb

SQRT2 = math.sqrt(2.0)

schedule = hb.make_stirap(20.0, SQRT2)
pair = schedule.segments[0].pair
ts = np.linspace(-4.5, 4.5, 400)

fig, axes = plt.subplots(3, 1, figsize=(8, 9), sharex=True)

for delta, color in ((0.0, "tab:blue"), (15.0, "tab:red")):
    energies = {"plus": [], "minus": []}
    margins = []
    for t in ts:
        o12, o23, _ = hb.pulse_amplitudes(schedule, t)
        state = hb.dressed_spectrum(delta, o12, o23)
        energies["plus"].append(state.eps_plus)
        energies["minus"].append(state.eps_minus)
        _, theta_dot = hb.mixing_angle(schedule, t)
        c_plus, c_minus = hb.nonadiabatic_coupling(state, theta_dot)
        gap_ratio = min(
            abs(state.eps_plus) / c_plus if c_plus > 0 else np.inf,
            abs(state.eps_minus) / c_minus if c_minus > 0 else np.inf,
        )
        margins.append(gap_ratio)
    axes[0].plot(ts, energies["plus"], color=color, label=f"detuning {delta:g}")
    axes[0].plot(ts, energies["minus"], color=color)
    axes[2].semilogy(ts, margins, color=color, label=f"detuning {delta:g}")

axes[0].axhline(0.0, color="black", lw=0.8, label="dark state (always 0)")
axes[0].set_ylabel("dressed energies (1/sigma)")
axes[0].legend(fontsize="small")
axes[0].grid(alpha=0.3)

thetas = [hb.mixing_angle(schedule, t)[0] for t in ts]
axes[1].plot(ts, thetas, color="tab:green")
axes[1].axhline(math.pi / 2, color="black", lw=0.8, linestyle="--")
axes[1].set_ylabel("mixing angle (rad)")
axes[1].grid(alpha=0.3)

axes[2].axhline(1.0, color="black", lw=0.8, linestyle="--")
axes[2].set_ylabel("gap / coupling")
axes[2].set_xlabel("time (sigma)")
axes[2].legend(fontsize="small")
axes[2].grid(alpha=0.3)

mid = hb.mixing_angle(schedule, 0.0)
print(f"mixing angle at the midpoint: {mid[0]:.4f} rad (pi/4 = {math.pi / 4:.4f}), "
      f"rate {mid[1]:.4f}/sigma")
model = hb.AnalyticHoleModel.from_pulses(20.0, SQRT2)
print(f"midpoint model: omega0 = {model.omega0:.3f}, theta_dot = {model.theta_dot:.4f}, "
      f"resonant margin = {hb.adiabaticity_margin(0.0, model):.1f}")

fig.tight_layout()
fig.savefig("dressed_states.png", dpi=150)
print("saved dressed_states.png")
