"""Numerical no-go experiments for deleting and cloning machines.

Every scenario state is built explicitly as a vector and pushed through the
generic partial-trace / eigensolver / entropy pipeline.  Closed forms in
terms of binary entropies of overlaps are deliberately not used here; the
test suite keeps them as an independent cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .channels import apply_channel, demon_channel, random_channel, stinespring
from .errors import DimensionMismatch, InvalidScenario
from .measures import (
    Ensemble,
    entanglement_entropy,
    fidelity,
    holevo_quantity,
    overlap,
    relative_entropy,
    von_neumann_entropy,
)
from .states import (
    DensityMatrix,
    PureState,
    apply_unitary,
    basis_state,
    ket,
    maximally_mixed_on,
    projector_onto,
    qubit,
    qubit_with_overlap,
    random_density_matrix,
    random_pure_state,
    random_unitary,
    seed_stream,
    symmetric_projector_two_qubits,
    tensor,
)

DEFAULT_TOL = 1e-9
VIOLATES = "VIOLATES"
CONSISTENT = "CONSISTENT"


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    quantities: dict[str, float]
    verdict: str
    tolerance: float = DEFAULT_TOL
    params: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, key: str) -> float:
        return self.quantities[key]

    @property
    def violates(self) -> bool:
        return self.verdict == VIOLATES


def _verdict(flag: bool) -> str:
    return VIOLATES if flag else CONSISTENT


@dataclass(frozen=True)
class DeletingScenario:
    """Two inputs with overlap ``s``; post-deletion ancillas with overlap ``t``.

    ``t = 1`` is exact deletion to a common blank state.
    """

    s: float
    t: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.s <= 1.0 and 0.0 <= self.t <= 1.0):
            raise InvalidScenario(f"overlaps must lie in [0, 1]: s={self.s}, t={self.t}")
        if self.s > self.t + 1e-12:
            raise InvalidScenario(f"ancilla overlap t={self.t} must not be below s={self.s}")

    def inputs(self) -> tuple[PureState, PureState]:
        return qubit(0.0), qubit_with_overlap(self.s)

    def ancillas(self) -> tuple[PureState, PureState]:
        return qubit(0.0), qubit_with_overlap(self.t)


@dataclass(frozen=True)
class CloningScenario:
    """Two inputs with overlap ``s``; environment records with overlap ``e``.

    Identical inputs (``s = 1``) cannot leave different records, so ``e`` is
    ignored there.
    """

    s: float
    e: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.s <= 1.0 and 0.0 <= self.e <= 1.0):
            raise InvalidScenario(f"overlaps must lie in [0, 1]: s={self.s}, e={self.e}")

    def inputs(self) -> tuple[PureState, PureState]:
        return qubit(0.0), qubit_with_overlap(self.s)

    def records(self) -> tuple[PureState, PureState]:
        if self.s >= 1.0 - 1e-12:
            return qubit(0.0), qubit(0.0)
        return qubit(0.0), qubit_with_overlap(self.e)


def _equal_mixture(states: Sequence[PureState]) -> DensityMatrix:
    p = 1.0 / len(states)
    return Ensemble([(p, s) for s in states]).average()


# -- closed-system entropy --------------------------------------------------

def deleting_entropy_gap(tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Entropy of the uniform state on all ``|psi psi>`` versus on all ``|psi 0>``."""
    s_in = von_neumann_entropy(maximally_mixed_on(symmetric_projector_two_qubits(), (2, 2)))
    out_proj = projector_onto([ket("00"), ket("10")])
    s_out = von_neumann_entropy(maximally_mixed_on(out_proj, (2, 2)))
    gap = s_in - s_out
    return ExperimentReport("delete-gap", {"S_in": s_in, "S_out": s_out, "gap": gap},
                            _verdict(gap > tolerance), tolerance)


def sharper_deleting_entropies(scenario: DeletingScenario, tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Average-state entropy before and after ``|psi psi> -> |psi a_psi>``."""
    (p1, p2), (a1, a2) = scenario.inputs(), scenario.ancillas()
    s_in = von_neumann_entropy(_equal_mixture([p1 @ p1, p2 @ p2]))
    s_out = von_neumann_entropy(_equal_mixture([p1 @ a1, p2 @ a2]))
    return ExperimentReport(
        "delete-sweep",
        {"S_in": s_in, "S_out": s_out, "gap": s_in - s_out},
        _verdict(s_in > s_out + tolerance), tolerance,
        {"s": scenario.s, "t": scenario.t},
    )


# -- open-system relative entropy -------------------------------------------

def cloning_holevo(scenario: CloningScenario, weak: bool = False,
                   tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Holevo quantity of the input and output ensembles of a cloner.

    Exact: ``|psi>|0>|0>_E -> |psi>|psi>|e_psi>_E``.
    Weak (information leaks to the environment only): ``|psi>|0>_E -> |psi>|e_psi>_E``.
    """
    psis, recs = scenario.inputs(), scenario.records()
    zero = basis_state(0)
    if weak:
        ins = [tensor(p, zero) for p in psis]
        outs = [tensor(p, r) for p, r in zip(psis, recs)]
    else:
        ins = [tensor(p, zero, zero) for p in psis]
        outs = [tensor(p, p, r) for p, r in zip(psis, recs)]
    chi_in = holevo_quantity(Ensemble([(0.5, s) for s in ins]))
    chi_out = holevo_quantity(Ensemble([(0.5, s) for s in outs]))
    return ExperimentReport(
        "clone-weak" if weak else "clone-sweep",
        {"chi_in": chi_in, "chi_out": chi_out, "gap": chi_out - chi_in},
        _verdict(chi_out > chi_in + tolerance), tolerance,
        {"s": scenario.s, "e": scenario.e},
    )


# -- entanglement -----------------------------------------------------------

def _alice_branches(branches: Sequence[PureState]) -> PureState:
    """``(|0>|b_0> + |1>|b_1>) / sqrt 2`` with Alice holding the label qubit."""
    amp = sum(np.kron(basis_state(i).amplitudes, b.amplitudes) for i, b in enumerate(branches))
    return PureState(amp / math.sqrt(len(branches)), (2,) + branches[0].dims)


def entanglement_deleting(scenario: DeletingScenario, tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Entanglement across Alice|Bob before and after Bob deletes a copy."""
    if abs(scenario.t - 1.0) > 1e-12:
        raise InvalidScenario("entanglement_deleting models exact deletion (t = 1)")
    p1, p2 = scenario.inputs()
    zero = basis_state(0)
    psi = _alice_branches([p1 @ p1, p2 @ p2])
    psi_del = _alice_branches([p1 @ zero, p2 @ zero])
    e_before = entanglement_entropy(psi, {0})
    e_after = entanglement_entropy(psi_del, {0})
    return ExperimentReport(
        "entangle-delete",
        {"E_before": e_before, "E_after": e_after, "gap": e_before - e_after},
        _verdict(e_before > e_after + tolerance), tolerance,
        {"s": scenario.s},
    )


def entanglement_cloning(scenario: CloningScenario, tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Entanglement across Alice|Bob before and after Bob runs a cloner."""
    psis, recs = scenario.inputs(), scenario.records()
    zero = basis_state(0)
    phi = _alice_branches([tensor(p, zero, zero) for p in psis])
    phi_clone = _alice_branches([tensor(p, p, r) for p, r in zip(psis, recs)])
    e_before = entanglement_entropy(phi, {0})
    e_after = entanglement_entropy(phi_clone, {0})
    return ExperimentReport(
        "entangle-clone",
        {"E_before": e_before, "E_after": e_after, "gap": e_after - e_before},
        _verdict(e_after > e_before + tolerance), tolerance,
        {"s": scenario.s, "e": scenario.e},
    )


# -- linearity and unitarity obstructions ----------------------------------

DELETE = "DELETE"
CLONE = "CLONE"


def _training_set(task: str, classical: bool):
    zero = basis_state(0)
    if task == DELETE:
        psis = [basis_state(0), basis_state(1)] + ([] if classical else [qubit(math.pi / 4)])
        return psis, [p @ p for p in psis], [p @ zero for p in psis]
    if task == CLONE:
        psis = [basis_state(0), basis_state(1)]
        return psis, [p @ zero for p in psis], [p @ p for p in psis]
    raise ValueError(f"unknown task {task!r}")


def _target_pair(task: str, psi: PureState):
    zero = basis_state(0)
    return (psi @ psi, psi @ zero) if task == DELETE else (psi @ zero, psi @ psi)


def linearity_obstruction(task: str, heldout_count: int = 100, seed: int = 0,
                          heldout: Sequence[PureState] | None = None,
                          classical: bool = False,
                          tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Fit the best linear map to a copying/deleting rule and test it off the training set.

    A held-out residual above ``tolerance`` certifies that no linear map
    realizes the transformation on all inputs.  ``classical`` restricts
    DELETE training to ``{|0>, |1>}``.
    """
    if heldout is None:
        if heldout_count < 1:
            raise ValueError("heldout_count must be at least 1")
        heldout = [random_pure_state(2, s) for s in seed_stream(seed, heldout_count)]
    _, xs, ys = _training_set(task, classical)
    op = linalg.fit_linear_operator(xs, ys)
    train = max(float(np.linalg.norm(op @ x.amplitudes - y.amplitudes)) for x, y in zip(xs, ys))
    residuals = []
    for psi in heldout:
        x, y = _target_pair(task, psi)
        residuals.append(float(np.linalg.norm(op @ x.amplitudes - y.amplitudes)))
    worst = max(residuals)
    return ExperimentReport(
        f"fit-{task.lower()}{'-classical' if classical else ''}",
        {"train_residual": train, "max_heldout_residual": worst},
        _verdict(worst > tolerance), tolerance,
        {"heldout": float(len(residuals))},
    )


def ancilla_orthogonality(a0: PureState, a1: PureState, tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Gram defect of ``|0>|A> -> |0>|A_0>``, ``|1>|A> -> |0>|A_1>``.

    Inputs are orthogonal, so a unitary extension exists only if the
    outputs are too.
    """
    if a0.dim != a1.dim:
        raise DimensionMismatch("ancilla states must share a dimension")
    blank = basis_state(0, a0.dim)
    ins = [basis_state(0) @ blank, basis_state(1) @ blank]
    outs = [basis_state(0) @ a0, basis_state(0) @ a1]
    defect = abs(overlap(outs[0], outs[1]) - overlap(ins[0], ins[1]))
    return ExperimentReport("ancilla", {"gram_defect": defect}, _verdict(defect > tolerance), tolerance)


def cnot_deletion_fidelity(psi: PureState) -> float:
    """``|<psi, 0| CNOT |psi, psi>|^2``."""
    from .channels import cnot

    out = PureState(cnot() @ (psi @ psi).amplitudes, (2, 2))
    return fidelity(psi @ basis_state(0), out)


# -- conservation checks ----------------------------------------------------

def spectral_deviation(before: DensityMatrix, after: DensityMatrix) -> float:
    return float(np.max(np.abs(before.eigenvalues() - after.eigenvalues())))


def spectrum_conservation(trials: int = 100, dim: int = 4, seed: int = 0,
                          tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Largest change of a sorted spectrum under random unitary conjugation."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    worst = 0.0
    for child in seed_stream(seed, trials):
        rho_seed, u_seed = seed_stream(child, 2)
        rho = random_density_matrix(dim, rho_seed)
        worst = max(worst, spectral_deviation(rho, apply_unitary(random_unitary(dim, u_seed), rho)))
    return ExperimentReport("conserve-spectrum", {"max_deviation": worst, "trials": float(trials)},
                            _verdict(worst > tolerance), tolerance)


def demon_spectrum_contrast() -> ExperimentReport:
    """Spectral change of the Demon channel on ``|+><+|`` and on ``I/2``."""
    demon = demon_channel()
    plus = qubit(math.pi / 4).density()
    mixed = DensityMatrix(np.eye(2) / 2)
    dev_plus = spectral_deviation(plus, apply_channel(demon, plus))
    dev_mixed = spectral_deviation(mixed, apply_channel(demon, mixed))
    return ExperimentReport("demon-spectrum", {"deviation_plus": dev_plus, "deviation_mixed": dev_mixed},
                            _verdict(max(dev_plus, dev_mixed) > DEFAULT_TOL))


def _random_channel_pair(child: int, dim: int):
    seeds = seed_stream(child, 4)
    env = 1 + seeds[3] % 4
    return (random_density_matrix(dim, seeds[0]), random_density_matrix(dim, seeds[1]),
            random_channel(dim, dim, env, seeds[2]))


def relative_entropy_monotonicity(trials: int = 200, seed: int = 0, dim: int = 4,
                                  tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Count channels that increase ``S(rho|sigma)`` (full-rank two-qubit pairs)."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    violations, worst = 0, -math.inf
    for child in seed_stream(seed, trials):
        rho, sigma, channel = _random_channel_pair(child, dim)
        gap = relative_entropy(apply_channel(channel, rho), apply_channel(channel, sigma)) - relative_entropy(rho, sigma)
        worst = max(worst, gap)
        violations += gap > tolerance
    return ExperimentReport("conserve-relent", {"violations": float(violations), "max_gap": worst,
                                                 "trials": float(trials)},
                            _verdict(violations > 0), tolerance)


def holevo_monotonicity(trials: int = 200, seed: int = 0, dim: int = 4,
                        tolerance: float = DEFAULT_TOL) -> ExperimentReport:
    """Count channels that increase the Holevo quantity of a random two-state ensemble."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    violations, worst = 0, -math.inf
    for child in seed_stream(seed, trials):
        rho, sigma, channel = _random_channel_pair(child, dim)
        p = 0.1 + 0.8 * (child % 1000) / 999
        ens = Ensemble([(p, rho), (1.0 - p, sigma)])
        gap = holevo_quantity(ens.map(lambda r: apply_channel(channel, r))) - holevo_quantity(ens)
        worst = max(worst, gap)
        violations += gap > tolerance
    return ExperimentReport("conserve-holevo", {"violations": float(violations), "max_gap": worst,
                                                 "trials": float(trials)},
                            _verdict(violations > 0), tolerance)


# -- the Demon channel ------------------------------------------------------

def demon_checks(trials: int = 100, seed: int = 0, tolerance: float = 1e-10) -> ExperimentReport:
    """Demon output is ``|0><0|``, dilation sends ``|psi>|0>_E`` to ``|0>|psi>_E``."""
    demon = demon_channel()
    dil = stinespring(demon)
    target = basis_state(0).density().matrix
    worst_out, worst_idem, min_fid = 0.0, 0.0, 1.0
    for child in seed_stream(seed, trials):
        rho_seed, psi_seed = seed_stream(child, 2)
        rho = random_density_matrix(2, rho_seed)
        out = apply_channel(demon, rho)
        worst_out = max(worst_out, float(np.max(np.abs(out.matrix - target))))
        worst_idem = max(worst_idem, float(np.max(np.abs(apply_channel(demon, out).matrix - out.matrix))))
        psi = random_pure_state(2, psi_seed)
        moved = PureState(dil.unitary @ dil.environment_input(psi), (2, 2))
        min_fid = min(min_fid, fidelity(basis_state(0) @ psi, moved))
    return ExperimentReport(
        "demon",
        {"max_output_deviation": worst_out, "max_idempotence_deviation": worst_idem,
         "min_dilation_fidelity": min_fid},
        _verdict(worst_out > tolerance or worst_idem > tolerance or 1.0 - min_fid > 1e-9),
        tolerance,
    )
