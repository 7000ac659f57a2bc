"""Monte Carlo circuit landscapes checked against exact quantities.

Loads a three-qubit model whose observable is given as Pauli strings,
builds a random product-of-exponentials ansatz, verifies the analytic
gradient and Hessian against finite differences, and then samples the
landscape to compare the empirical loss mean with the exact average over
random bases.
"""

from pathlib import Path

import numpy as np

from wishartscape import (
    RngState,
    build_ansatz,
    fd_gradient,
    fd_hessian,
    grad_eval,
    hessian_eval,
    load_model,
    loss_eval,
    mc_landscape,
    spectrum_from_pauli,
)

HERE = Path(__file__).resolve().parent
model = load_model(HERE / "models" / "pauli_model.json")
comp = model.components[0]

# the loader diagonalized the Pauli sum; redo it directly to show the path
terms = [(1.0, "ZII"), (0.5, "IXZ"), (0.25, "YYI")]
spec = spectrum_from_pauli(terms)
print("pauli observable 1.0*ZII + 0.5*IXZ + 0.25*YYI")
print(f"  eigenvalues: {np.round(spec, 6)}")
print(f"  matches loaded model: {np.allclose(spec, comp.observable_spectrum)}")
print()

# one concrete circuit instance; conjugators must stay unitary
inst = build_ansatz(comp, RngState(5))
u = inst.conjugators[0]
defect = float(np.max(np.abs(u @ u.conj().T - np.eye(comp.dim))))
theta = RngState(6).generator.uniform(-np.pi, np.pi, comp.sector_params)
print(f"ansatz instance: {comp.sector_params} parameters at dim {comp.dim}")
print(f"  first conjugator unitarity defect: {defect:.3e}")
print(f"  loss at a random point: {loss_eval(inst, theta):.6f}")
print()

# analytic derivatives against central finite differences
g = grad_eval(inst)
g_fd = fd_gradient(inst)
h = hessian_eval(inst)
h_fd = fd_hessian(inst)
print("derivatives at the instance's own parameter point")
print(f"  gradient:  max |analytic - fd| = {np.max(np.abs(g - g_fd)):.3e}")
print(f"  hessian:   max |analytic - fd| = {np.max(np.abs(h - h_fd)):.3e}")
print(f"  hessian symmetry defect:        "
      f"{np.max(np.abs(h - h.T)):.3e}")
print()

# landscape sampling: losses come back relative to the spectrum floor, and
# their average must approach the exact mean over conjugations, which is
# the flat spectral average times the input trace
mc = mc_landscape(comp, 20_000, RngState(11), collect=("loss", "grad"))
summary = mc.loss_distribution()
exact_mean = spec.mean() * comp.input_trace
print(f"sampled {summary.count} instances")
print(f"  loss floor: {mc.loss_floor:.6f}")
print(f"  empirical mean (floor restored): "
      f"{mc.loss_floor + summary.mean:.6f}  vs exact {exact_mean:.6f}")
print(f"  empirical variance: {summary.variance:.6f}")
print(f"  range: [{mc.loss_floor + summary.minimum:.6f}, "
      f"{mc.loss_floor + summary.maximum:.6f}]")
grad_mean = float(mc.gradients.mean())
grad_se = float(mc.gradients.std() / np.sqrt(mc.gradients.size))
print(f"  gradient entries: mean {grad_mean:+.2e} "
      f"(standard error {grad_se:.2e}), centered as it must be")
