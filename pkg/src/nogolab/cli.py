"""Command-line runner: experiments in, deterministic CSV out."""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import experiments as ex
from .states import qubit, qubit_with_overlap

COMMANDS = ("delete-gap", "delete-sweep", "clone-sweep", "entangle-delete",
            "entangle-clone", "fit", "conserve", "demon", "all")

COLUMNS = ("experiment", "index", "s", "param",
           "name_1", "value_1", "name_2", "value_2", "name_3", "value_3",
           "verdict", "expected")

EPILOG = """\
output columns (one row per experiment report):
  experiment      report name, e.g. delete-sweep, clone-weak, conserve-relent
  index           sweep index within the experiment (0-based)
  s               input overlap <psi1|psi2> (blank when not applicable)
  param           t (delete-sweep), e (clone-*/entangle-clone), ancilla
                  overlap (ancilla); blank otherwise
  name_k,value_k  up to three named quantities in bits (or counts/residuals)
  verdict         VIOLATES or CONSISTENT at --tolerance
  expected        the verdict theory predicts; any mismatch gives exit 1

per command quantities:
  delete-gap       S_in, S_out, gap
  delete-sweep     S_in, S_out, gap          (t = max(--ancilla-overlap, s))
  clone-sweep      chi_in, chi_out, gap      (rows clone-sweep and clone-weak)
  entangle-delete  E_before, E_after, gap
  entangle-clone   E_before, E_after, gap
  fit              train_residual, max_heldout_residual, heldout; gram_defect
  conserve         max_deviation / violations, max_gap, trials
  demon            output, idempotence and dilation checks; spectral contrast

exit status: 0 all verdicts as expected, 1 mismatch, 2 usage error
"""


@dataclass(frozen=True)
class RunConfig:
    command: str
    overlap_steps: int = 11
    env_overlap: float = 1.0
    ancilla_overlap: float = 1.0
    trials: int = 200
    seed: int = 0
    tolerance: float = ex.DEFAULT_TOL
    output_path: str | None = None


@dataclass(frozen=True)
class Row:
    report: ex.ExperimentReport
    index: int
    expected: str
    s: float | None = None
    param: float | None = None


def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if x == 0.0:
        return "0"
    return format(x, ".9g")


def _expect(flag: bool) -> str:
    return ex.VIOLATES if flag else ex.CONSISTENT


def _grid(steps: int) -> list[float]:
    return [float(v) for v in np.linspace(0.0, 1.0, steps)]


def _interior(s: float) -> bool:
    return 0.0 < s < 1.0


def rows_delete_gap(cfg: RunConfig) -> Iterator[Row]:
    yield Row(ex.deleting_entropy_gap(cfg.tolerance), 0, ex.VIOLATES)


def rows_delete_sweep(cfg: RunConfig) -> Iterator[Row]:
    for i, s in enumerate(_grid(cfg.overlap_steps)):
        t = max(cfg.ancilla_overlap, s)
        rep = ex.sharper_deleting_entropies(ex.DeletingScenario(s, t), cfg.tolerance)
        yield Row(rep, i, _expect(0.0 < s < t), s, t)


def rows_clone_sweep(cfg: RunConfig) -> Iterator[Row]:
    e = cfg.env_overlap
    for i, s in enumerate(_grid(cfg.overlap_steps)):
        sc = ex.CloningScenario(s, e)
        yield Row(ex.cloning_holevo(sc, False, cfg.tolerance), i, _expect(_interior(s)), s, e)
        yield Row(ex.cloning_holevo(sc, True, cfg.tolerance), i, _expect(_interior(s) and e < 1.0), s, e)


def rows_entangle_delete(cfg: RunConfig) -> Iterator[Row]:
    for i, s in enumerate(_grid(cfg.overlap_steps)):
        rep = ex.entanglement_deleting(ex.DeletingScenario(s, 1.0), cfg.tolerance)
        yield Row(rep, i, _expect(_interior(s)), s)


def rows_entangle_clone(cfg: RunConfig) -> Iterator[Row]:
    e = cfg.env_overlap
    for i, s in enumerate(_grid(cfg.overlap_steps)):
        rep = ex.entanglement_cloning(ex.CloningScenario(s, e), cfg.tolerance)
        yield Row(rep, i, _expect(_interior(s)), s, e)


def rows_fit(cfg: RunConfig) -> Iterator[Row]:
    tol = cfg.tolerance
    randoms = ex.linearity_obstruction(ex.CLONE, cfg.trials, cfg.seed, tolerance=tol)
    plus = ex.linearity_obstruction(ex.CLONE, heldout=[qubit(math.pi / 4)], tolerance=tol)
    yield Row(plus, 0, ex.VIOLATES)
    yield Row(randoms, 1, ex.VIOLATES)
    yield Row(ex.linearity_obstruction(ex.DELETE, cfg.trials, cfg.seed, tolerance=tol), 0, ex.VIOLATES)
    classical = [qubit(0.0), qubit(math.pi / 2)]
    yield Row(ex.linearity_obstruction(ex.DELETE, heldout=classical, classical=True, tolerance=tol),
              0, ex.CONSISTENT)
    for i, a in enumerate((0.0, 0.3, 1.0)):
        rep = ex.ancilla_orthogonality(qubit(0.0), qubit_with_overlap(a), tol)
        yield Row(rep, i, _expect(a > 0.0), None, a)


def rows_conserve(cfg: RunConfig) -> Iterator[Row]:
    tol = cfg.tolerance
    yield Row(ex.spectrum_conservation(cfg.trials, 4, cfg.seed, tol), 0, ex.CONSISTENT)
    yield Row(ex.relative_entropy_monotonicity(cfg.trials, cfg.seed, tolerance=tol), 0, ex.CONSISTENT)
    yield Row(ex.holevo_monotonicity(cfg.trials, cfg.seed, tolerance=tol), 0, ex.CONSISTENT)


def rows_demon(cfg: RunConfig) -> Iterator[Row]:
    yield Row(ex.demon_checks(cfg.trials, cfg.seed), 0, ex.CONSISTENT)
    yield Row(ex.demon_spectrum_contrast(), 0, ex.VIOLATES)


RUNNERS: dict[str, Callable[[RunConfig], Iterator[Row]]] = {
    "delete-gap": rows_delete_gap,
    "delete-sweep": rows_delete_sweep,
    "clone-sweep": rows_clone_sweep,
    "entangle-delete": rows_entangle_delete,
    "entangle-clone": rows_entangle_clone,
    "fit": rows_fit,
    "conserve": rows_conserve,
    "demon": rows_demon,
}


def collect(cfg: RunConfig) -> list[Row]:
    if cfg.command == "all":
        rows = [r for name in sorted(RUNNERS) for r in RUNNERS[name](cfg)]
        return sorted(rows, key=lambda r: (r.report.name, r.index))
    return list(RUNNERS[cfg.command](cfg))


def render_csv(rows: list[Row]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(COLUMNS)
    for row in rows:
        named = list(row.report.quantities.items())[:3]
        named += [("", None)] * (3 - len(named))
        cells = [row.report.name, str(row.index), _fmt(row.s), _fmt(row.param)]
        for name, value in named:
            cells += [name, _fmt(value)]
        cells += [row.report.verdict, row.expected]
        writer.writerow(cells)
    return buf.getvalue()


def run(cfg: RunConfig) -> int:
    rows = collect(cfg)
    text = render_csv(rows)
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    mismatches = [r for r in rows if r.report.verdict != r.expected]
    for r in mismatches:
        print(f"mismatch: {r.report.name}[{r.index}] is {r.report.verdict}, expected {r.expected}",
              file=sys.stderr)
    return 1 if mismatches else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nogolab",
        description="Numerical no-deleting / no-cloning experiments and conservation checks.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--overlap-steps", type=int, default=11, help="grid points for s in [0, 1] (>= 2)")
    p.add_argument("--env-overlap", type=float, default=1.0, help="environment record overlap e in [0, 1]")
    p.add_argument("--ancilla-overlap", type=float, default=1.0, help="post-deletion ancilla overlap t in [0, 1]")
    p.add_argument("--trials", type=int, default=200, help="random trials for conserve/fit/demon (>= 1)")
    p.add_argument("--seed", type=int, default=0, help="64-bit seed")
    p.add_argument("--tolerance", type=float, default=ex.DEFAULT_TOL, help="verdict tolerance (> 0)")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    return p


def parse_config(argv=None) -> RunConfig:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.overlap_steps < 2:
        parser.error("--overlap-steps must be an integer >= 2")
    if not 0.0 <= a.env_overlap <= 1.0:
        parser.error("--env-overlap must lie in [0, 1]")
    if not 0.0 <= a.ancilla_overlap <= 1.0:
        parser.error("--ancilla-overlap must lie in [0, 1]")
    if a.trials < 1:
        parser.error("--trials must be an integer >= 1")
    if not -(2**63) <= a.seed < 2**64:
        parser.error("--seed must fit in 64 bits")
    if not (a.tolerance > 0.0 and math.isfinite(a.tolerance)):
        parser.error("--tolerance must be a positive finite float")
    return RunConfig(a.command, a.overlap_steps, a.env_overlap, a.ancilla_overlap,
                     a.trials, a.seed, a.tolerance, a.out)


def main(argv=None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
