"""Command line front end.

Subcommands:
    analyze       closed-form landscape report for one model
    sample        draw losses (and conditional gradients/Hessians) to CSV
    simulate      exact circuit Monte Carlo with goodness-of-fit columns
    minima        tabulate the minima-value density
    trainability  scaling verdict across a family of model sizes

Exit codes: 0 success, 1 invalid input, 2 work budget refused.
All CSV floats carry 17 significant digits so replays are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np
from scipy import stats as sp_stats

from .algebra import SectorModel, SimpleComponent, spectral_stats
from .errors import (
    BudgetExceededError,
    UndefinedRegimeError,
    ValidationError,
    WishartscapeError,
)
from .landscape import (
    build_minima_density,
    gp_conditions,
    kac_rice_log_density,
    loss_variance,
    low_purity_applicable,
    low_purity_bound,
    overparameterization_ratios,
    trainability_verdict,
    welch_satterthwaite,
)
from .model_io import load_model
from .randmat import RngState
from .simulator import mc_landscape
from .wishart_process import (
    loss_cdf_rank1,
    sample_gradient_given_loss,
    sample_hessian_at_critical,
    sample_loss_batch,
)

__all__ = ["main"]

MAX_SIMULATE_DIM = 256
DEFAULT_BUDGET = 1e10

_REGIME = {-1: "underparameterized", 0: "critical", 1: "overparameterized"}


def _fmt(x: float) -> str:
    return f"{float(x):.16e}"


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the budget refusal owns
    # that code here, so user errors are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(sub: argparse.ArgumentParser, *, samples: int | None = None):
    sub.add_argument("--seed", type=int, default=0, help="seed for every random stream")
    sub.add_argument("--out", default=".", help="directory for CSV outputs")
    if samples is not None:
        sub.add_argument("--samples", type=int, default=samples,
                         help="number of Monte Carlo draws")


def _build_parser() -> _Parser:
    parser = _Parser(prog="wishartscape",
                     description="Loss landscape statistics for sector models.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="closed-form report for one model")
    p.add_argument("--model", required=True)
    p.add_argument("--threshold-variance-exponent", type=float, default=1.0)
    p.add_argument("--threshold-cumulant", type=float, default=1e-3)
    p.set_defaults(func=_cmd_analyze)

    p = subs.add_parser("sample", help="draw losses and conditional derivatives")
    p.add_argument("--model", required=True)
    _add_common(p, samples=1000)
    p.set_defaults(func=_cmd_sample)

    p = subs.add_parser("simulate", help="exact circuit Monte Carlo")
    p.add_argument("--model", required=True)
    _add_common(p, samples=1000)
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET,
                   help="refuse runs costing more than this many operations")
    p.set_defaults(func=_cmd_simulate)

    p = subs.add_parser("minima", help="tabulate the minima-value density")
    p.add_argument("--model", required=True)
    p.add_argument("--grid", type=int, default=4096, help="density grid resolution")
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_minima)

    p = subs.add_parser("trainability", help="scaling verdict across sizes")
    p.add_argument("--model", required=True, nargs="+",
                   help="one model file per system size (3+ distinct sizes)")
    p.add_argument("--threshold-variance-exponent", type=float, default=1.0,
                   help="largest tolerated polylog decay exponent")
    p.set_defaults(func=_cmd_trainability)
    return parser


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _g(x: float) -> str:
    return f"{float(x):.6g}"


def _cmd_analyze(args) -> int:
    model = load_model(args.model)
    ratios = overparameterization_ratios(model)
    print(f"model: {args.model}")
    print(f"total parameters: {model.total_params}")
    print(f"normalization: {_g(model.normalization)}")
    for a, comp in enumerate(model.components):
        st = spectral_stats(comp)
        gamma = ratios[a]
        regime = _REGIME[int(np.sign(gamma - 1.0))] if gamma > 0 else "no parameters"
        print(f"sector {a}: field {comp.field.symbol}, dim {comp.dim}, "
              f"index {_g(comp.index)}, params {comp.sector_params}")
        print(f"  observable (zero-shifted): mean {_g(st.mean_eig)}, "
              f"spread {_g(st.std_eig)}, floor {_g(st.floor)}")
        print(f"  effective dof: {_g(st.dof_real)} (rounded {st.dof})")
        print(f"  input: trace {_g(comp.input_trace)}, purity {_g(comp.input_purity)}, "
              f"rank-one: {'yes' if comp.is_rank_one_input() else 'no'}")
        print(f"  parameter ratio: {_g(gamma)} ({regime})")
        if 0.0 < gamma < 1.0:
            scale = comp.index * st.mean_eig * comp.input_trace
            print(f"  critical-point log-density per parameter at the sector "
                  f"mean: {_g(kac_rice_log_density(comp, scale))}")
        if low_purity_applicable(comp):
            print(f"  low-purity variance ceiling: "
                  f"{_g(low_purity_bound(comp, model.normalization))}")
    print(f"loss variance: {_g(loss_variance(model))}")
    gp = gp_conditions(model,
                       variance_exponent=args.threshold_variance_exponent,
                       cumulant_threshold=args.threshold_cumulant)
    print(f"gaussian-process check: variance {_g(gp.variance_term)} vs floor "
          f"{_g(gp.variance_floor)} -> {'ok' if gp.variance_ok else 'fail'}; "
          f"cumulant {_g(gp.cumulant_term)} vs threshold "
          f"{_g(gp.cumulant_threshold)} -> {'ok' if gp.cumulant_ok else 'fail'}; "
          f"plausible: {'yes' if gp.plausible else 'no'}")
    try:
        k_eff, theta_eff = welch_satterthwaite(model)
        print(f"minima gamma fit: shape {_g(k_eff)}, scale {_g(theta_eff)}")
    except UndefinedRegimeError:
        print("minima gamma fit: point mass at zero (no underparameterized sector)")
    return 0


def _cmd_sample(args) -> int:
    model = load_model(args.model)
    if args.samples < 1:
        raise ValidationError(f"--samples must be positive, got {args.samples}")
    out = _out_dir(args)
    rng = RngState(args.seed)
    n_comp = len(model.components)
    losses = sample_loss_batch(model, args.samples, rng)
    header = ["sample_id"] + [f"loss_{a}" for a in range(n_comp)] + ["total"]
    rows = [[str(i)] + [_fmt(v) for v in losses[i]] + [_fmt(losses[i].sum())]
            for i in range(args.samples)]
    _write_csv(out / "losses.csv", header, rows)
    written = ["losses.csv"]

    rank1 = all(c.is_rank_one_input() for c in model.components)
    if rank1:
        p = model.total_params
        grad_rows = []
        hess_rows = []
        for i in range(args.samples):
            grad = sample_gradient_given_loss(model, losses[i], rng)
            hess = sample_hessian_at_critical(model, losses[i], rng)
            grad_rows.append([str(i)] + [_fmt(v) for v in grad.entries])
            sid = str(i)
            for r in range(p):
                row_vals = hess.matrix[r]
                for c in range(p):
                    hess_rows.append([sid, str(r), str(c), _fmt(row_vals[c])])
        _write_csv(out / "gradients.csv",
                   ["sample_id"] + [f"grad_{j}" for j in range(p)], grad_rows)
        _write_csv(out / "hessians.csv",
                   ["sample_id", "row", "col", "value"], hess_rows)
        written += ["gradients.csv", "hessians.csv"]
    else:
        print("warning: conditional derivative laws need rank-one inputs in "
              "every sector; wrote losses only", file=sys.stderr)
    print(f"wrote {', '.join(written)} to {out}")
    return 0


def _single_sector_view(comp: SimpleComponent) -> SectorModel:
    return SectorModel(
        components=(comp,),
        total_params=max(comp.sector_params, 1),
        normalization=1.0,
    )


def _cmd_simulate(args) -> int:
    model = load_model(args.model)
    if args.samples < 1:
        raise ValidationError(f"--samples must be positive, got {args.samples}")
    cost = 0.0
    for comp in model.components:
        if comp.dim > MAX_SIMULATE_DIM:
            raise BudgetExceededError(
                f"sector dimension {comp.dim} exceeds the simulator cap "
                f"{MAX_SIMULATE_DIM}"
            )
        cost += float(args.samples) * float(comp.dim) ** 3 * (comp.sector_params + 2)
    if cost > args.budget:
        raise BudgetExceededError(
            f"estimated cost {cost:.3e} operations exceeds budget {args.budget:.3e}; "
            "lower --samples or raise --budget"
        )
    out = _out_dir(args)
    rng = RngState(args.seed)
    gof_rows = []
    for a, comp in enumerate(model.components):
        comp_rng, ref_rng, cond_rng = rng.split(3)
        mc = mc_landscape(comp, args.samples, comp_rng,
                          collect=("loss", "grad"))
        p = comp.sector_params
        header = ["sample_id", "loss"] + [f"grad_{j}" for j in range(p)]
        rows = []
        for i in range(args.samples):
            row = [str(i), _fmt(mc.losses[i])]
            if p:
                row += [_fmt(v) for v in mc.gradients[i]]
            rows.append(row)
        _write_csv(out / f"simulate_component_{a}.csv", header, rows)

        if comp.is_rank_one_input():
            loss_ref = "gamma-closed-form"
            ks = sp_stats.kstest(mc.losses, lambda z: loss_cdf_rank1(comp, z))
        else:
            loss_ref = "wishart-two-sample"
            view = _single_sector_view(comp)
            ref = sample_loss_batch(view, args.samples, ref_rng)[:, 0]
            ks = sp_stats.ks_2samp(mc.losses, ref)
        grad_stat = grad_p = ""
        if p and comp.is_rank_one_input():
            view = _single_sector_view(comp)
            synth = np.empty((args.samples, p))
            for i in range(args.samples):
                draw = sample_gradient_given_loss(view, [mc.losses[i]], cond_rng)
                synth[i] = draw.entries
            gks = sp_stats.ks_2samp(mc.gradients.ravel(), synth.ravel())
            grad_stat, grad_p = _fmt(gks.statistic), _fmt(gks.pvalue)
        gof_rows.append([str(a), loss_ref, _fmt(ks.statistic), _fmt(ks.pvalue),
                         grad_stat, grad_p])
    _write_csv(out / "gof.csv",
               ["component", "loss_reference", "loss_ks_stat", "loss_ks_pvalue",
                "grad_ks_stat", "grad_ks_pvalue"], gof_rows)
    print(f"wrote {len(model.components)} component file(s) and gof.csv to {out}")
    return 0


def _cmd_minima(args) -> int:
    model = load_model(args.model)
    out = _out_dir(args)
    density = build_minima_density(model, n_grid=args.grid)
    ratios = overparameterization_ratios(model)
    for a, comp in enumerate(model.components):
        gamma = ratios[a]
        regime = _REGIME[int(np.sign(gamma - 1.0))] if gamma > 0 else "no parameters"
        print(f"sector {a}: parameter ratio {_g(gamma)} ({regime})")
    if density.point_mass:
        print("minima law: point mass at zero")
        _write_csv(out / "minima.csv", ["z", "density"], [])
        return 0
    rows = [[_fmt(z), _fmt(d)] for z, d in zip(density.z_grid, density.density)]
    _write_csv(out / "minima.csv", ["z", "density"], rows)
    print(f"grid mass: {_g(density.mass)}")
    k_eff, theta_eff = welch_satterthwaite(model)
    print(f"matched gamma: shape {_g(k_eff)}, scale {_g(theta_eff)}")
    print(f"wrote minima.csv to {out}")
    return 0


def _cmd_trainability(args) -> int:
    models = [load_model(path) for path in args.model]
    report = trainability_verdict(
        models, polylog_exponent=args.threshold_variance_exponent)
    for path, size, var in zip(args.model, report.sizes, report.variances):
        print(f"{path}: size {int(size)}, normalized variance {_g(var)}")
    print(f"fitted slope of log-variance vs log-log-size: {_g(report.slope)} "
          f"(stderr {_g(report.slope_stderr)})")
    print(f"variance verdict: {report.variance_verdict} "
          f"(boundary {_g(-report.polylog_exponent)})")
    print(f"minima condition (params reach max beta*dof at every size): "
          f"{'ok' if report.minima_ok else 'fail'}")
    print(f"trainable: {'yes' if report.trainable else 'no'}")
    return 0


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code in (None, 0):
            return 0
        return code if isinstance(code, int) else 1
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (WishartscapeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
