"""Command-line entry point: ``pqkverify verify ...`` and ``pqkverify jets info``."""

from __future__ import annotations

import argparse
import json
import sys

from .exactla import Mode
from .reports import FAIL, UNSUPPORTED, VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TOLERANCE = 1e-9
DEFAULT_FD_TOLERANCE = 1e-6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pqkverify", description="Exact verification of the nearly-PQK rigidity statement.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, mode=True, samples=False):
        sp.add_argument("--m", type=_positive_int, default=2, help="quaternionic dimension (dim = 4m)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--output", choices=("text", "json"), default="text")
        if mode:
            sp.add_argument("--mode", choices=[x.value for x in Mode], default=Mode.EXACT.value)
            sp.add_argument("--tolerance", type=_positive_float, default=None,
                            help=f"float-mode tolerance (default {DEFAULT_TOLERANCE}; "
                                 f"{DEFAULT_FD_TOLERANCE} for finite-difference checks)")
        if samples:
            sp.add_argument("--samples", type=_positive_int, default=100)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True, parser_class=_Parser)
    common(vsub.add_parser("lemma1", help="structure algebra, wedge oracle, field ground truth"), samples=True)
    common(vsub.add_parser("theorem", help="nearly-PQK jets equal PQK jets (exact)"))
    common(vsub.add_parser("claims", help="contraction claims on nearly-PQK jets"), samples=True)
    common(vsub.add_parser("lemma1d", help="vanishing on totally real pairs forces M_I = 0"))

    jets = sub.add_parser("jets", help="jet space information")
    jsub = jets.add_subparsers(dest="suite", required=True, parser_class=_Parser)
    common(jsub.add_parser("info", help="dimensions of the jet spaces"), mode=False)
    return p


class ConfigError(ValueError):
    pass


def _exact_only(args, what):
    if getattr(args, "mode", "exact") != Mode.EXACT.value:
        raise ConfigError(f"{what} is a space-equality decision and runs in exact mode only")


def _run_lemma1(args) -> list[VerificationReport]:
    from .fieldlab import verify_field_suite
    from .suites import verify_frame_invariance, verify_structure, verify_wedge

    mode = Mode(args.mode)
    tol = args.tolerance
    reports = [verify_structure(args.m, args.seed),
               verify_wedge(args.m, samples=args.samples, seed=args.seed, mode=mode,
                            tol=tol or DEFAULT_TOLERANCE),
               verify_frame_invariance(args.m, samples=args.samples, seed=args.seed)]
    reports += verify_field_suite(args.m, seed=args.seed, mode=mode, tol=tol or DEFAULT_FD_TOLERANCE)
    return reports


def _run_theorem(args):
    from .rigidity import verify_theorem

    _exact_only(args, "verify theorem")
    return [verify_theorem(args.m)]


def _run_claims(args):
    from .rigidity import verify_claim_identities, verify_claims

    _exact_only(args, "verify claims")
    return verify_claim_identities(args.m, args.samples, args.seed) + verify_claims(args.m, args.samples, args.seed)


def _run_lemma1d(args):
    from .pqalg import canonical_triple
    from .rigidity import verify_lemma1d

    _exact_only(args, "verify lemma1d")
    return [verify_lemma1d(canonical_triple(args.m))]


def _run_jets_info(args):
    from .jets import jet_basis, pqk_family
    from .pqalg import canonical_triple
    from .reports import INFO

    t = canonical_triple(args.m)
    basis = jet_basis(t)
    family = pqk_family(t)
    extra = {"d_J": basis.dim, "d_J_per_direction": basis.dim // t.space.dim, "pqk_family_dim": family.dim}
    if args.m >= 2:
        from .rigidity import context

        extra["nearly_pqk_dim"] = context(args.m).nearly.dim
    else:
        from .rigidity import UNSUPPORTED_DIM_MESSAGE

        extra["nearly_pqk_dim"] = None
        extra["message"] = UNSUPPORTED_DIM_MESSAGE
    dims = [basis.dim, family.dim] + ([extra["nearly_pqk_dim"]] if args.m >= 2 else [])
    return [VerificationReport("jets_info", t.space.dim, Mode.EXACT.value, INFO, seed=args.seed,
                               dims=dims, extra=extra)]


RUNNERS = {
    ("verify", "lemma1"): _run_lemma1,
    ("verify", "theorem"): _run_theorem,
    ("verify", "claims"): _run_claims,
    ("verify", "lemma1d"): _run_lemma1d,
    ("jets", "info"): _run_jets_info,
}


def render(reports, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2)
    lines = [r.summary() for r in reports]
    for r in reports:
        if r.status == UNSUPPORTED and "message" in r.extra:
            lines.append(f"  {r.extra['message']}")
        if r.status == FAIL:
            lines.append(f"  counterexample: {json.dumps(r.to_json()['details']['counterexample'], sort_keys=True)}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        reports = RUNNERS[(args.command, args.suite)](args)
    except ConfigError as exc:
        print(f"pqkverify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for r in reports:
        if r.seed is None:
            r.seed = args.seed
    unsupported = [r for r in reports if r.status == UNSUPPORTED]
    if unsupported:
        for r in unsupported:
            print(f"pqkverify: error: {r.extra.get('message', 'unsupported configuration')}", file=sys.stderr)
        if args.output == "json":
            print(render(reports, "json"))
        return EXIT_USAGE
    print(render(reports, args.output))
    return EXIT_FAIL if any(r.status == FAIL for r in reports) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
