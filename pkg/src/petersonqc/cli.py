"""Command-line driver: build, verify, rank and pls subcommands.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 budget exhausted.  Output is deterministic for a fixed configuration and
seed list; the Groebner budget can be overridden through the
``PETERSONQC_BUDGET`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import chevalley as ch
from . import peterson as pt
from . import pls as plsmod
from . import polyalg as pa
from . import rootdata as rd
from .errors import BudgetError, ConfigurationError, PreconditionError, StructuralError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

ALL_SUITES = ("golden-sl2", "homogeneity", "lemma52", "fiber", "rank",
              "redundancy", "appendixB", "appendixA", "pls")

# the standard verification matrix: (type, rank, excluded simples)
CASE_MATRIX = (
    ("A", 1, (1,)),
    ("A", 2, (1, 2)),
    ("A", 2, (1,)),
    ("A", 2, (2,)),
    ("B", 2, (1, 2)),
    ("B", 2, (1,)),
    ("B", 2, (2,)),
)


@dataclass
class JobConfig:
    lie_type: str = "A"
    rank: int = 1
    parabolic: tuple = ()       # included simple indices
    equivariant: bool = False
    seeds: tuple = (11, 23, 47)
    budget: int = pa.DEFAULT_BUDGET
    output: str = "json"
    symbolic: bool = False
    max_length: int = 8

    def validate(self):
        if self.budget <= 0:
            raise ConfigurationError("budget must be positive")
        if not self.seeds:
            raise ConfigurationError("at least one seed is required")
        rd.build_root_datum(self.lie_type, self.rank)  # validates the pair
        for i in self.parabolic:
            if not 1 <= i <= self.rank:
                raise ConfigurationError(
                    f"parabolic index {i} out of range 1..{self.rank}")

    @property
    def excluded(self):
        return tuple(i for i in range(1, self.rank + 1) if i not in self.parabolic)


def _parse_index_set(text):
    text = (text or "").strip()
    if not text:
        return ()
    try:
        return tuple(sorted({int(tok) for tok in text.split(",") if tok.strip()}))
    except ValueError:
        raise ConfigurationError(f"cannot parse index set from {text!r}") from None


def _datum_parabolic(config):
    datum = rd.build_root_datum(config.lie_type, config.rank)
    parabolic = rd.build_parabolic(datum, config.excluded)
    return datum, parabolic


# -- build -------------------------------------------------------------------

def cmd_build(config, kind="cell", stream=sys.stdout):
    config.validate()
    datum, parabolic = _datum_parabolic(config)
    if kind == "cell":
        pres = pt.build_YP(datum, parabolic, config.equivariant, budget=config.budget)
    elif kind == "cell-star":
        pres = pt.build_YP_star(datum, parabolic, config.equivariant,
                                budget=config.budget)
    elif kind == "centralizer":
        pres = pt.build_centralizer(datum, config.equivariant)
    else:
        raise ConfigurationError(f"unknown build kind {kind!r}")
    doc = pt.presentation_json(pres)
    if config.output == "text":
        stream.write(f"{doc['type']}{doc['rank']} parabolic={doc['parabolic']} "
                     f"kind={doc['kind']} equivariant={doc['equivariant']}\n")
        for v in doc["variables"]:
            stream.write(f"var {v['name']}\trole={v['role']}\tweight={v['weight']}\n")
        for g in doc["generators"]:
            stream.write(f"gen {g}\n")
        for i, q in enumerate(doc["qbar"], start=1):
            stream.write(f"qbar_{i} {q}\n")
        for f in doc["inverted"]:
            stream.write(f"inverted {f}\n")
    else:
        stream.write(json.dumps(doc, indent=2, sort_keys=True))
        stream.write("\n")
    return EXIT_OK


# -- verification suites -------------------------------------------------------

def _expected_rank(datum, parabolic):
    return len(rd.weyl_group(datum)) // len(parabolic.W_P_elements)


def _suite_golden_sl2(config, golden_dir):
    checks = []
    datum = rd.build_root_datum("A", 1)
    parabolic = rd.build_parabolic(datum, (1,))
    pres = pt.build_YP(datum, parabolic, equivariant=True)
    doc = pt.presentation_json(pres)
    cen = pt.presentation_json(pt.build_centralizer(datum, equivariant=True))
    path = os.path.join(golden_dir, "sl2_cell.json")
    with open(path, "r", encoding="utf-8") as fh:
        want = json.load(fh)
    checks.append(("golden-sl2:cell", doc == want))
    path = os.path.join(golden_dir, "sl2_centralizer.json")
    with open(path, "r", encoding="utf-8") as fh:
        want = json.load(fh)
    checks.append(("golden-sl2:centralizer", cen == want))
    ql = pt.qloc(datum, parabolic, 1)
    ring = ql.num.ring
    x, h = ring.var("x_1"), ring.var("h_1")
    expected = pa.RatFunc(ring.one() - 2 * h * x, x * x)
    checks.append(("golden-sl2:qloc", ql == expected))
    report = plsmod.rank_one_verify()
    for name, ok in report.items():
        checks.append((f"golden-sl2:{name}", ok))
    return checks


def _case_presentations(config):
    for lie_type, rank, excluded in CASE_MATRIX:
        datum = rd.build_root_datum(lie_type, rank)
        parabolic = rd.build_parabolic(datum, excluded)
        pres = pt.build_YP(datum, parabolic, equivariant=True, budget=config.budget)
        tag = f"{lie_type}{rank}/P={list(parabolic.included_simples)}"
        yield tag, datum, parabolic, pres


def _suite_homogeneity(config):
    checks = []
    for tag, datum, parabolic, pres in _case_presentations(config):
        ok = all(pa.is_weighted_homogeneous(g, pres.weights)[0]
                 for g in pres.ideal.generators)
        for i in range(1, datum.rank + 1):
            homog, wt = pa.is_weighted_homogeneous(pres.qbar[i - 1], pres.weights)
            want = pt.quantum_degree(datum, parabolic, i)
            ok = ok and homog and (wt is None or wt == want)
        checks.append((f"homogeneity:{tag}", ok))
    return checks


def _suite_lemma52(config):
    checks = []
    for tag, datum, parabolic, pres in _case_presentations(config):
        gb = pa.groebner(pres.ideal, budget=config.budget)
        ok = all(pa.normal_form(pres.qbar[i - 1] - pres.ring.one(), gb).is_zero()
                 for i in parabolic.included_simples)
        checks.append((f"lemma52:{tag}", ok))
    return checks


def _suite_fiber(config):
    checks = []
    for tag, datum, parabolic, pres in _case_presentations(config):
        dim, supported = pt.fiber_analysis(pres, budget=config.budget)
        want = _expected_rank(datum, parabolic)
        checks.append((f"fiber:{tag}", dim == want and supported))
    return checks


def _suite_rank(config):
    checks = []
    for tag, datum, parabolic, pres in _case_presentations(config):
        got = pt.generic_rank(pres, seeds=config.seeds, symbolic=config.symbolic,
                              budget=config.budget)
        checks.append((f"rank:{tag}", got == _expected_rank(datum, parabolic)))
    return checks


def _suite_redundancy(config):
    checks = []
    for lie_type, rank in (("A", 2), ("B", 2)):
        datum = rd.build_root_datum(lie_type, rank)
        for excluded in [(), (1,), (2,), (1, 2)]:
            parabolic = rd.build_parabolic(datum, excluded)
            ok = pt.redundancy_check(datum, parabolic)
            checks.append((f"redundancy:{lie_type}{rank}/excl={list(excluded)}", ok))
    return checks


def _suite_appendixB(config):
    checks = []
    for lie_type, rank in (("A", 2), ("B", 2), ("G", 2)):
        datum = rd.build_root_datum(lie_type, rank)
        algebra = ch.build_chevalley(datum)
        w0 = rd.longest_element(datum)
        words = rd.all_reduced_words(w0)
        mats = [ch.weyl_rep(algebra, tuple(word)) for word in words]
        checks.append((f"appendixB:{lie_type}{rank}/word-independence({len(words)})",
                       all(m == mats[0] for m in mats)))
        ok = True
        for i in range(1, rank + 1):
            s = ch.simple_reflection_rep(algebra, i)
            ok = ok and (s * s) == ch.torus_from_character(
                algebra, datum.simple_root(i), -1)
        checks.append((f"appendixB:{lie_type}{rank}/simple-squares", ok))
        rep0 = ch.weyl_rep(algebra, w0)
        checks.append((f"appendixB:{lie_type}{rank}/longest-square",
                       (rep0 * rep0).is_identity()))
        ok = True
        for excluded in [(), (1,), (2,), (1, 2)]:
            parabolic = rd.build_parabolic(datum, excluded)
            repP = ch.weyl_rep(algebra, parabolic.w_P)
            char = tuple(sum(a[j] for a in parabolic.R_P_plus)
                         for j in range(rank))
            ok = ok and (repP * repP) == ch.torus_from_character(algebra, char, -1)
        checks.append((f"appendixB:{lie_type}{rank}/parabolic-squares", ok))
        ok = True
        for excluded in [(), (1,), (2,), (1, 2)]:
            parabolic = rd.build_parabolic(datum, excluded)
            ok = ok and all(ch.check_prop_B6(algebra, parabolic))
        checks.append((f"appendixB:{lie_type}{rank}/translate-sign", ok))
    return checks


def _suite_appendixA(config):
    checks = []
    types = ([("A", r) for r in range(1, 9)] + [("B", r) for r in range(2, 9)]
             + [("C", r) for r in range(3, 9)] + [("D", r) for r in range(4, 9)]
             + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])
    ok = True
    for lie_type, rank in types:
        inv = rd.build_root_datum(lie_type, rank).inverse_cartan()
        ok = ok and all(x >= 0 for row in inv for x in row)
    checks.append((f"appendixA:inverse-cartan-nonnegative({len(types)} types)", ok))

    ok = True
    small = [(t, r) for t, r in types if r <= 4]
    for lie_type, rank in small:
        datum = rd.build_root_datum(lie_type, rank)
        for ell in range(rank):
            b, c = rd.decompose_fundamental_coweight(datum, ell)
            ok = ok and all(x >= 0 for x in b + c)
            omega = datum.fundamental_coweights
            lhs = [sum(b[m] * omega[m][j] for m in range(ell))
                   + (c[j - ell] if j >= ell else 0) for j in range(rank)]
            ok = ok and tuple(lhs) == tuple(omega[ell])
    checks.append((f"appendixA:coweight-decomposition({len(small)} types)", ok))

    singles_ok = True
    pairs_ok = True
    n_single = n_pair = 0
    for lie_type, rank in (("A", 1), ("A", 2), ("B", 2), ("G", 2)):
        datum = rd.build_root_datum(lie_type, rank)
        for excluded in _all_excluded(rank):
            parabolic = rd.build_parabolic(datum, excluded)
            for lam, hull in _hull_instances(datum):
                target = _cone_target(datum, parabolic, lam)
                for mu1 in hull:
                    lhs, rhs = rd.cone_membership_equiv(datum, parabolic, lam, [mu1])
                    singles_ok = singles_ok and (lhs == rhs)
                    n_single += 1
                for mu1 in hull[::3]:
                    for mu2 in hull[::3]:
                        lhs, rhs = rd.cone_membership_equiv(datum, parabolic, lam,
                                                            [mu1, mu2])
                        # corrected pair form: every member weakly below the
                        # target, at least one strictly (see decisions ledger)
                        below = all(all(x >= 0 for x in rd.vsub(target, mu))
                                    for mu in (mu1, mu2))
                        strict = any(tuple(mu) != target for mu in (mu1, mu2))
                        pairs_ok = pairs_ok and (lhs == (below and strict))
                        n_pair += 1
    checks.append((f"appendixA:cone-equivalence-singletons({n_single})", singles_ok))
    checks.append((f"appendixA:cone-equivalence-pairs-corrected({n_pair})", pairs_ok))
    return checks


def _hull_instances(datum):
    from itertools import product as iproduct
    rank = datum.rank
    out = []
    for lam in iproduct(range(0, 3), repeat=rank):
        if datum.is_dominant_coweight(lam) and any(lam):
            hull = [mu for mu in iproduct(range(-4, 5), repeat=rank)
                    if rd.in_orbit_hull(datum, lam, mu)]
            out.append((tuple(lam), hull))
    return out


def _cone_target(datum, parabolic, lam):
    w0 = rd.longest_element(datum)
    return tuple(int(v) for v in parabolic.w_P.act_coweight(w0.act_coweight(lam)))


def _all_excluded(rank):
    from itertools import combinations
    out = []
    for k in range(rank + 1):
        out.extend(combinations(range(1, rank + 1), k))
    return out


def _suite_pls(config):
    checks = []
    for lie_type, rank in (("A", 1), ("A", 2), ("B", 2)):
        datum = rd.build_root_datum(lie_type, rank)
        elements = plsmod.waf_minus_elements(datum, config.max_length)
        for excluded in _all_excluded(rank):
            parabolic = rd.build_parabolic(datum, excluded)
            ok = True
            for x in elements:
                ok = ok and plsmod.pls_degree_check(x, parabolic)
                img = plsmod.phi_pls(x, parabolic)
                if not img.zero:
                    ok = ok and img.schubert in parabolic.W_upper_P
            tag = (f"pls:{lie_type}{rank}/P={list(parabolic.included_simples)}"
                   f"/sweep({len(elements)})")
            checks.append((tag, ok))
        # translation products on antidominant pairs with entries >= -3
        from itertools import product as iproduct
        ok = True
        count = 0
        for excluded in _all_excluded(rank):
            parabolic = rd.build_parabolic(datum, excluded)
            ads = [mu for mu in iproduct(range(-3, 1), repeat=rank)
                   if all(datum.pair(datum.simple_root(i), mu) <= 0
                          for i in range(1, rank + 1))
                   and all(datum.pair(a, mu) == 0 for a in parabolic.R_P_plus)]
            for mu1 in ads:
                for mu2 in ads:
                    ok = ok and plsmod.translation_product_check(
                        datum, parabolic, mu1, mu2)
                    count += 1
        checks.append((f"pls:{lie_type}{rank}/translation-products({count})", ok))
    return checks


SUITE_RUNNERS = {
    "homogeneity": _suite_homogeneity,
    "lemma52": _suite_lemma52,
    "fiber": _suite_fiber,
    "rank": _suite_rank,
    "redundancy": _suite_redundancy,
    "appendixB": _suite_appendixB,
    "appendixA": _suite_appendixA,
    "pls": _suite_pls,
}


def cmd_verify(config, suites, golden_dir=None, stream=sys.stdout):
    for name in suites:
        if name not in ALL_SUITES:
            raise ConfigurationError(f"unknown suite {name!r}; "
                                     f"choose from {', '.join(ALL_SUITES)}")
    if golden_dir is None:
        golden_dir = os.path.join(os.path.dirname(__file__), "golden")
    checks = []
    for name in suites:
        if name == "golden-sl2":
            checks.extend(_suite_golden_sl2(config, golden_dir))
        else:
            checks.extend(SUITE_RUNNERS[name](config))
    failures = [tag for tag, ok in checks if not ok]
    if config.output == "json":
        stream.write(json.dumps({
            "checks": [{"check": tag, "pass": ok} for tag, ok in checks],
            "failures": failures,
        }, indent=2, sort_keys=True))
        stream.write("\n")
    else:
        for tag, ok in checks:
            stream.write(f"{'PASS' if ok else 'FAIL'} {tag}\n")
        stream.write(f"{len(checks) - len(failures)}/{len(checks)} checks passed\n")
    return EXIT_OK if not failures else EXIT_VERIFY


def cmd_rank(config, kind="cell", stream=sys.stdout):
    config.validate()
    datum, parabolic = _datum_parabolic(config)
    pres = pt.build_YP(datum, parabolic, config.equivariant, budget=config.budget)
    value = pt.generic_rank(pres, seeds=config.seeds, symbolic=config.symbolic,
                            budget=config.budget)
    doc = {"type": config.lie_type, "rank": config.rank,
           "parabolic": list(config.parabolic), "generic_rank": value,
           "seeds": list(config.seeds),
           "coset_count": _expected_rank(datum, parabolic)}
    if config.output == "text":
        stream.write(f"generic rank = {value}\n")
    else:
        stream.write(json.dumps(doc, indent=2, sort_keys=True))
        stream.write("\n")
    return EXIT_OK


def cmd_pls(config, stream=sys.stdout):
    config.validate()
    datum, parabolic = _datum_parabolic(config)
    elements = plsmod.waf_minus_elements(datum, config.max_length)
    stream.write("w_word\tlambda\tlength\tin_WP_af\teta\twtilde\n")
    for x in elements:
        member = rd.in_WP_af(x, parabolic)
        img = plsmod.phi_pls(x, parabolic)
        eta = "0" if img.zero else ",".join(str(e) for e in img.eta)
        wt = "-" if img.zero else ("e" if img.schubert.true_length() == 0
                                   else "".join(str(i) for i in img.schubert.word))
        word = "e" if not x.finite_part.word else "".join(
            str(i) for i in x.finite_part.word)
        lam = ",".join(str(v) for v in x.translation)
        stream.write(f"{word}\t({lam})\t{rd.affine_length(x)}\t"
                     f"{int(member)}\t{eta}\t{wt}\n")
    return EXIT_OK


# -- entry point ------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--type", dest="lie_type", default="A",
                     help="simple Lie type letter A..G")
    sub.add_argument("--rank", type=int, default=1)
    sub.add_argument("--parabolic", default="",
                     help="comma-separated simple indices of the parabolic "
                          "(empty for the Borel case)")
    sub.add_argument("--equivariant", action="store_true")
    sub.add_argument("--seeds", default="11,23,47")
    sub.add_argument("--budget", type=int, default=None)
    sub.add_argument("--format", dest="output", default="json",
                     choices=("json", "text", "tsv"))
    sub.add_argument("--symbolic", action="store_true",
                     help="add a fully symbolic run to generic-rank checks")


def _config_from_args(args):
    budget = args.budget
    if budget is None:
        env = os.environ.get("PETERSONQC_BUDGET")
        budget = int(env) if env else pa.DEFAULT_BUDGET
    return JobConfig(
        lie_type=args.lie_type,
        rank=args.rank,
        parabolic=_parse_index_set(args.parabolic),
        equivariant=args.equivariant,
        seeds=tuple(int(s) for s in args.seeds.split(",") if s.strip()),
        budget=budget,
        output=args.output,
        symbolic=args.symbolic,
        max_length=getattr(args, "max_length", 8),
    )


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="petersonqc",
        description="Build and verify polynomial presentations of Peterson "
                    "scheme cells for simple Lie types.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_build = subs.add_parser("build", help="emit a scheme presentation")
    _add_common(p_build)
    p_build.add_argument("--kind", default="cell",
                         choices=("cell", "cell-star", "centralizer"))

    p_verify = subs.add_parser("verify", help="run verification suites")
    _add_common(p_verify)
    p_verify.add_argument("--suite", default=",".join(ALL_SUITES),
                          help="comma-separated suite names")
    p_verify.add_argument("--golden-dir", default=None)

    p_rank = subs.add_parser("rank", help="generic rank of the cell presentation")
    _add_common(p_rank)

    p_pls = subs.add_parser("pls", help="emit the basis-map table as TSV")
    _add_common(p_pls)
    p_pls.add_argument("--max-length", dest="max_length", type=int, default=8)

    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
        if args.command == "build":
            return cmd_build(config, kind=args.kind)
        if args.command == "verify":
            suites = tuple(s.strip() for s in args.suite.split(",") if s.strip())
            return cmd_verify(config, suites, golden_dir=args.golden_dir)
        if args.command == "rank":
            return cmd_rank(config)
        if args.command == "pls":
            return cmd_pls(config)
        raise ConfigurationError(f"unknown command {args.command!r}")
    except (ConfigurationError, PreconditionError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetError as exc:
        print(f"budget exhausted: {exc}; stats={exc.stats}", file=sys.stderr)
        return EXIT_BUDGET
    except StructuralError as exc:
        print(f"structural failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
