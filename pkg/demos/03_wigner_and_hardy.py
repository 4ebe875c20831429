"""
Wigner functions, Hardy envelopes and majorants
===============================================

The Wigner transform of a coherent state is the Gaussian
``(pi hbar)^-1 exp(-|z|^2 / hbar)``. Hardy's uncertainty principle says a
function and its Fourier transform cannot both decay faster than that:
bounds with rates a, b and ``ab > 1`` force the function to vanish. The same
principle rules out phase-space functions dominated by Gaussians that are
too narrow, whatever else they look like.
"""

import numpy as np

from phasecap import (
    SampledWavefunction,
    compact_support_verdict,
    envelope_fit_wavefunction,
    gaussian_wigner,
    hardy_classify,
    hermite_function,
    majorant_verdict,
    marginals,
    wigner_transform,
)

hbar = 1.0

# %%
# Coherent state on 256 points over [-8, 8].
psi = SampledWavefunction.from_function(lambda x: np.pi**-0.25 * np.exp(-(x**2) / 2), 256, 8.0, hbar)
W = wigner_transform(psi)
X, P = W.mesh()
print(f"max |W - exact| = {np.max(np.abs(W.values - np.exp(-(X**2 + P**2)) / np.pi)):.2e}")
position, momentum = marginals(W)
print(f"position marginal error = {np.max(np.abs(position - np.abs(psi.values) ** 2)):.2e}")

# %%
# Hermite functions have negative Wigner values but exact marginals.
W3 = wigner_transform(hermite_function(3, 1.0))
print(f"Hermite k=3: min W = {W3.values.min():.4f}, total mass = {W3.integral().real:.8f}")

# %%
# Hardy's trichotomy and fitted envelopes.
for a, b in [(1.0, 1.0), (2.0, 1.0), (0.5, 1.0)]:
    print(f"a={a}, b={b}: {hardy_classify(a, b).tag.value}")
for k in (0, 2, 5):
    env = envelope_fit_wavefunction(hermite_function(k, 1.0))
    print(f"Hermite k={k}: fitted a={env.a:.4f}, b={env.b:.4f}, ab={env.product:.4f}")

# %%
# A Gaussian "Wigner function" twice as narrow as the vacuum: its majorant
# ellipsoid has capacity h/4, so it is not the Wigner function of any state.
rho = gaussian_wigner(2 * np.eye(2), hbar=hbar).on_grid(W)
cert, verdict = majorant_verdict(rho, 2 * np.eye(2))
print(f"narrow Gaussian: capacity {cert.capacity:.4f} -> {verdict.value}")

# %%
# Compact support is always too narrow: truncating the vacuum Wigner function
# to a disc of radius 2 sqrt(hbar) produces a certificate with M = 2 I.
truncated = W.like(np.where(X**2 + P**2 <= 4.0 * hbar, W.values, 0.0))
cert, verdict = compact_support_verdict(truncated, 2.0 * np.sqrt(hbar))
print(f"truncated vacuum: C = {cert.C:.3e}, certificate valid = {cert.valid} -> {verdict.value}")
