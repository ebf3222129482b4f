"""Command-line front end.  Exit status: 0 success, 1 failed verdict, 2 bad usage or input."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import acceptance, ampleness, formio, hitchin, linalg, restriction, scalar, simplicial
from .builtins import INDEXED, builtin_form, split_metric1
from .forms import PForm, PseudoMetric, PVector, volume
from .orbits import Family, OrbitLabel, WrongDegree, classify, stabilizer_algebra_dim


class UsageError(Exception):
    pass


# -- argument parsing helpers ---------------------------------------------------------


def rational(text: str) -> Fraction:
    try:
        v = scalar.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc
    if not isinstance(v, Fraction):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")
    return v


def load_form_arg(spec: str, k: int | None = None) -> PForm:
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        if name in INDEXED and k is None:
            raise UsageError(f"builtin {name!r} needs --k")
        try:
            return builtin_form(name, k)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    try:
        return formio.load_form(spec)
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from exc
    except formio.FormFormatError as exc:
        raise UsageError(str(exc)) from exc


def load_complex_arg(spec: str):
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        if name not in simplicial.STANDARD:
            raise UsageError(f"unknown builtin complex {name!r}; known: {sorted(simplicial.STANDARD)}")
        return simplicial.STANDARD[name]()
    try:
        return formio.load_complex(spec)
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from exc
    except (formio.FormFormatError, simplicial.ComplexError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


NAMED_METRICS = {
    "g0": lambda: PseudoMetric.diagonal([1] * 7),
    "sg0": lambda: PseudoMetric.diagonal([1, 1, 1, -1, -1, -1, -1]),
    "sg1": lambda: PseudoMetric.from_matrix(split_metric1(), volume(7, Fraction(1, 8))),
}


def parse_metric(spec: str | None):
    if spec in (None, "none"):
        return None
    if spec in NAMED_METRICS:
        return NAMED_METRICS[spec]()
    if spec.startswith("diag:"):
        try:
            entries = [rational(x) for x in spec[5:].split(",")]
            return PseudoMetric.diagonal(entries)
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"bad metric {spec!r}: {exc}") from exc
    raise UsageError(f"unknown metric {spec!r}; use none, {', '.join(NAMED_METRICS)} or diag:a,b,...")


def parse_basis(spec: str, n: int):
    try:
        vecs = [[rational(x) for x in v.split(",")] for v in spec.split(";")]
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from exc
    if len(vecs) != n - 1 or any(len(v) != n for v in vecs):
        raise UsageError(f"--basis needs {n - 1} vectors of length {n}, separated by ';'")
    try:
        return restriction.OrientedHyperplane.from_basis(vecs)
    except restriction.DegenerateBasis as exc:
        raise UsageError(str(exc)) from exc


def parse_family(tag: str) -> Family:
    try:
        return Family(tag)
    except ValueError as exc:
        raise UsageError(f"unknown family {tag!r}; known: {[f.value for f in Family]}") from exc


# -- reporting --------------------------------------------------------------------------


def to_jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, scalar.Surd):
        return scalar.to_json(x)
    if isinstance(x, (PForm, PVector)):
        return formio.form_to_obj(x) if isinstance(x, PForm) else {
            "n": x.n, "p": x.p, "terms": [{"idx": list(I), "coeff": scalar.to_json(c)} for I, c in x.terms.items()]}
    if isinstance(x, linalg.Signature):
        return {"pos": x.pos, "neg": x.neg, "null": x.null}
    if isinstance(x, Family):
        return x.value
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return x


def digest(*inputs) -> str:
    h = hashlib.sha256()
    for x in inputs:
        h.update(json.dumps(to_jsonable(x), sort_keys=True).encode())
    return h.hexdigest()[:16]


class Report:
    def __init__(self, args, argv, inputs=()):
        self.as_json = getattr(args, "json", False)
        self.command = list(argv)
        self.inputs = digest(*inputs) if inputs else None
        self.results: dict = {}
        self.verdict = None
        self.lines: list = []

    def add(self, key, value, text=None):
        self.results[key] = value
        self.lines.append(f"{key}: {value if text is None else text}")

    def text(self, line):
        self.lines.append(line)

    def emit(self, out):
        if self.as_json:
            obj = {"command": self.command, "inputs": self.inputs, "results": to_jsonable(self.results),
                   "verdict": self.verdict}
            out.write(json.dumps(obj, indent=1) + "\n")
        else:
            for line in self.lines:
                out.write(line + "\n")
            if self.verdict is not None:
                out.write(f"verdict: {self.verdict}\n")
        return 1 if self.verdict == "fail" else 0


def _mat_str(M):
    return "[" + "; ".join(" ".join(scalar.to_str(x) for x in row) for row in M) + "]"


def describe_label(rep: Report, lab: OrbitLabel, sigma: PForm):
    info = stabilizer_algebra_dim(sigma)
    rep.add("label", lab.family.value)
    rep.add("n", lab.n)
    rep.add("p", lab.p)
    rep.add("stable", info.stable)
    rep.add("stab_dim", info.dim)
    certs = {}
    for key, val in lab.certificates.items():
        certs[key] = val
        if isinstance(val, list) and val and isinstance(val[0], list):
            rep.text(f"  {key} = {_mat_str(val)}")
        else:
            rep.text(f"  {key} = {val}")
    rep.results["certificates"] = certs


# -- commands ---------------------------------------------------------------------------


def cmd_classify(args, argv, out):
    sigma = load_form_arg(args.form, args.k)
    rep = Report(args, argv, [sigma])
    describe_label(rep, classify(sigma), sigma)
    return rep.emit(out)


def cmd_restrict(args, argv, out):
    sigma = load_form_arg(args.form, args.k)
    B = parse_basis(args.basis, sigma.n)
    rep = Report(args, argv, [sigma, [list(b) for b in B.basis]])
    r = restriction.restrict(sigma, B)
    rep.add("restricted", r)
    metric = parse_metric(args.metric)
    if metric is not None:
        rep.add("causal_type", restriction.causal_type(B, metric))
    describe_label(rep, classify(r), r)
    return rep.emit(out)


def cmd_survey(args, argv, out):
    sigma = load_form_arg(args.form, args.k)
    metric = parse_metric(args.metric)
    if args.count < 1:
        raise UsageError("--count must be positive")
    rep = Report(args, argv, [sigma, args.metric, args.count, args.seed])
    hist = restriction.restriction_survey(sigma, metric, args.count, args.seed)
    rows = sorted(hist.items())
    rep.results["histogram"] = [{"causal_type": c, "family": f, "count": k} for (c, f), k in rows]
    rep.text(f"{'causal type':<12} {'family':<24} count")
    for (c, f), k in rows:
        rep.text(f"{c:<12} {f:<24} {k}")
    return rep.emit(out)


def cmd_ample_check(args, argv, out):
    fam = parse_family(args.family)
    tau = load_form_arg(args.tau, args.k)
    nu = load_form_arg(args.nu, args.k)
    rep = Report(args, argv, [fam, tau, nu])
    try:
        sigma = ampleness.assemble(tau, nu)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lab = classify(sigma)
    rep.add("assembled", sigma)
    rep.add("label", lab.family.value)
    rep.add("member", lab.family is fam)
    rep.verdict = "pass" if lab.family is fam else "fail"
    return rep.emit(out)


def cmd_ample_witness(args, argv, out):
    if args.case not in ampleness.WITNESS_CASES:
        raise UsageError(f"unknown case {args.case!r}; known: {list(ampleness.WITNESS_CASES)}")
    rep = Report(args, argv, [args.case, args.k, args.eps])
    res = ampleness.verify_witness(args.case, args.k, args.eps if args.eps is not None else Fraction(1, 10))
    rep.results["checks"] = [{"check": n, "ok": ok} for n, ok in res.checks]
    for n, ok in res.checks:
        rep.text(f"  [{'ok' if ok else 'FAILED'}] {n}")
    for key, val in res.details.items():
        shown = "(" + ", ".join(scalar.to_str(c) for c in val) + ")" if isinstance(val, tuple) else val
        rep.add(key, val, shown)
    rep.verdict = "pass" if res.passed else "fail"
    return rep.emit(out)


def cmd_ample_sample(args, argv, out):
    fam = parse_family(args.family)
    tau = load_form_arg(args.tau, args.k)
    if args.count < 1:
        raise UsageError("--count must be positive")
    rep = Report(args, argv, [fam, tau, args.count, args.seed])
    res = ampleness.sample_N(fam, tau, args.count, args.seed)
    rep.add("tries", res.tries)
    rep.add("accepted", len(res.accepted))
    rep.add("rate", f"{res.rate:.3f}")
    if res.hull is not None:
        rep.add("zero_in_hull", res.hull.contains_zero)
        if res.hull.contains_zero:
            support = {i: c for i, c in enumerate(res.hull.coefficients) if c}
            rep.add("hull_support", support, ", ".join(f"#{i}: {scalar.to_str(c)}" for i, c in support.items()))
    return rep.emit(out)


def cmd_hitchin_vol(args, argv, out):
    sigma = load_form_arg(args.form, args.k)
    rep = Report(args, argv, [sigma])
    try:
        v = hitchin.hitchin_volume(sigma)
    except hitchin.NotHitchin as exc:
        rep.add("error", str(exc))
        rep.verdict = "fail"
        return rep.emit(out)
    rep.add("family", v.family.value)
    rep.add("volume", str(v))
    rep.add("power", v.power)
    rep.add("value", v.value)
    rep.add("decimal", f"{float(v):.15g}")
    return rep.emit(out)


def cmd_hitchin_xi(args, argv, out):
    sigma = load_form_arg(args.form, args.k)
    rep = Report(args, argv, [sigma, args.step])
    try:
        r = hitchin.xi_dual(sigma, args.step)
    except hitchin.NotHitchin as exc:
        rep.add("error", str(exc))
        rep.verdict = "fail"
        return rep.emit(out)
    nonzero = {"".join(map(str, I)): v for I, v in r.xi.items() if abs(v) > 1e-12}
    rep.add("xi", nonzero, ", ".join(f"{v:+.9f} th^{I}" for I, v in nonzero.items()))
    if r.candidate is not None:
        rep.add("candidate", r.candidate)
        rep.add("constant", r.constant, f"{r.constant:.12g}")
        rep.add("residual", r.residual, f"{r.residual:.3e}")
    rep.add("linearity_residual", r.linearity_residual, f"{r.linearity_residual:.3e}")
    return rep.emit(out)


def cmd_hitchin_scale(args, argv, out):
    sigma = load_form_arg(args.form, args.k)
    rep = Report(args, argv, [sigma, args.lam])
    try:
        ok = hitchin.scaling_law(sigma, args.lam)
    except hitchin.NotHitchin as exc:
        rep.add("error", str(exc))
        rep.verdict = "fail"
        return rep.emit(out)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t = 1 + args.lam
    rep.add("vol_sigma", str(hitchin.hitchin_volume(sigma)))
    rep.add("vol_scaled", str(hitchin.hitchin_volume(t * sigma)))
    rep.add("exponent", f"{sigma.n}/{sigma.p}")
    rep.verdict = "pass" if ok else "fail"
    return rep.emit(out)


def cmd_hodge_split(args, argv, out):
    K = load_complex_arg(args.complex)
    rep = Report(args, argv, [K.simplices])
    try:
        S = simplicial.build_splitting(K)
    except simplicial.SplittingError as exc:
        rep.add("error", str(exc))
        rep.verdict = "fail"
        return rep.emit(out)
    rep.add("f_vector", [K.count(p) for p in range(K.dim + 1)])
    rep.add("betti", S.betti())
    for deg in S.degrees:
        rep.add(f"degree_{deg.p}", {"harmonic": deg.betti, "exact": len(deg.exact), "coexact": len(deg.coexact)})
    rep.verdict = "pass"
    return rep.emit(out)


def cmd_hodge_whitney(args, argv, out):
    K = load_complex_arg(args.complex)
    if K.coords is None:
        K = K.with_standard_embedding()
        rep_note = "no coordinates given; using the standard embedding"
    else:
        rep_note = None
    rep = Report(args, argv, [K.simplices, K.coords])
    if rep_note:
        rep.text(rep_note)
    try:
        res = simplicial.whitney_check(K)
    except simplicial.ComplexError as exc:
        raise UsageError(str(exc)) from exc
    rep.results["checks"] = [{"check": n, "ok": ok} for n, ok in res.checks]
    for n, ok in res.checks:
        rep.text(f"  [{'ok' if ok else 'FAILED'}] {n}")
    if args.check:
        rep.verdict = "pass" if res.passed else "fail"
    return rep.emit(out)


def cmd_selftest(args, argv, out):
    rep = Report(args, argv)
    results = acceptance.run_all(None if rep.as_json else (lambda line: out.write(line + "\n")))
    rep.results["criteria"] = [
        {"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail, "seconds": round(r.seconds, 3)}
        for r in results
    ]
    rep.verdict = "pass" if all(r.passed for r in results) else "fail"
    return rep.emit(out)


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stableforms", description="Exact computations with stable exterior forms.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, form=True):
        if form:
            sp.add_argument("--form", required=True, help="form file or builtin:NAME")
        sp.add_argument("--k", type=int, help="parameter for indexed builtin forms")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        return sp

    sp = common(sub.add_parser("classify", help="orbit label, stabilizer dimension and certificates"))
    sp.set_defaults(func=cmd_classify)

    sp = common(sub.add_parser("restrict", help="restrict a form to an oriented hyperplane"))
    sp.add_argument("--basis", required=True, help="n-1 vectors, e.g. '1,0,0;0,1,0' (order fixes orientation)")
    sp.add_argument("--metric", help="none, g0, sg0, sg1 or diag:a,b,...")
    sp.set_defaults(func=cmd_restrict)

    sp = common(sub.add_parser("survey", help="histogram of restrictions to random hyperplanes"))
    sp.add_argument("--metric", default="none")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_survey)

    amp = sub.add_parser("ample", help="ampleness checks").add_subparsers(dest="action", required=True)
    sp = common(amp.add_parser("check", help="is theta^nu + tau in the given family?"), form=False)
    sp.add_argument("--family", required=True)
    sp.add_argument("--tau", required=True)
    sp.add_argument("--nu", required=True)
    sp.set_defaults(func=cmd_ample_check)
    sp = common(amp.add_parser("witness", help="verify an explicit witness set"), form=False)
    sp.add_argument("--case", required=True, help=", ".join(ampleness.WITNESS_CASES))
    sp.add_argument("--eps", type=rational)
    sp.set_defaults(func=cmd_ample_witness)
    sp = common(amp.add_parser("sample", help="rejection-sample members and test 0 in their hull"), form=False)
    sp.add_argument("--family", required=True)
    sp.add_argument("--tau", required=True)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_ample_sample)

    hit = sub.add_parser("hitchin", help="Hitchin volume computations").add_subparsers(dest="action", required=True)
    sp = common(hit.add_parser("vol"))
    sp.set_defaults(func=cmd_hitchin_vol)
    sp = common(hit.add_parser("xi"))
    sp.add_argument("--step", type=rational, default=Fraction(1, 10**4))
    sp.set_defaults(func=cmd_hitchin_xi)
    sp = common(hit.add_parser("scale"))
    sp.add_argument("--lambda", dest="lam", type=rational, required=True)
    sp.set_defaults(func=cmd_hitchin_scale)

    hod = sub.add_parser("hodge", help="cochain splittings and Whitney forms").add_subparsers(dest="action", required=True)
    sp = common(hod.add_parser("split"), form=False)
    sp.add_argument("--complex", required=True, help="complex file or builtin:NAME")
    sp.set_defaults(func=cmd_hodge_split)
    sp = common(hod.add_parser("whitney"), form=False)
    sp.add_argument("--complex", required=True)
    sp.add_argument("--check", action="store_true", help="turn the identities into a verdict")
    sp.set_defaults(func=cmd_hodge_whitney)

    sp = sub.add_parser("selftest", help="run every acceptance check")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None, out=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args, argv, out)
    except UsageError as exc:
        sys.stderr.write(f"stableforms: error: {exc}\n")
        return 2
    except (WrongDegree, ampleness.FamilyMismatch) as exc:
        sys.stderr.write(f"stableforms: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
