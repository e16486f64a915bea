"""Suite runner, report emitter, and command-line interface.

Every suite is exhaustive for dimension at most 2 and seeded-random for
dimension 3.  Reports are deterministic: the same configuration and seed
produce byte-identical output.  Exit codes: 0 if every check passed,
1 if any check failed, 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass, field

from .graded import SCALAR_ONE, GradedElement
from . import polyalg as P
from .ainfty import (
    bimodule_relation_residual,
    check_unital_bimodule,
    morphism_relation_residual,
)
from .bridge import (
    AlgebraPair,
    augmentation_bimodule,
    flipped_contraction_scale,
    higher_right_action_residual,
    koszul_bimodule,
    koszul_to_bar_element,
    koszul_to_bar_morphism,
    right_action_chain_residual,
    zero_morphism,
)
from .homology import (
    build_bar_complex,
    build_koszul_complex,
    build_point_complex,
    quasi_iso_verdict,
)
from .tensorbar import (
    TensorWord,
    algebra_as_bimodule,
    bar_bimodule,
    bar_to_module_morphism,
    bar_words,
    homotopy_residual,
    tensor_bimodule,
    unit_section,
)

SUITES = (
    "relations-K",
    "relations-KV",
    "tensor-closure",
    "bar-equivalence",
    "mu-morphism",
    "homotopy",
    "phi-theorem",
    "homology",
    "quasi-iso",
    "all",
)

SABOTAGES = ("none", "flip-m21", "drop-phi-signs", "zero-morphism")

ENTRY_WEIGHT_CAP = 2


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str = "all"
    dim: int = 2
    max_weight: int = 3
    max_arity: int = 4
    max_bar_length: int = 3
    samples: int = 500
    seed: int = 0
    report: str = "text"
    sabotage: str = "none"

    def validate(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if not 1 <= self.dim <= 6:
            raise ConfigError("dim must be between 1 and 6")
        if min(self.max_weight, self.max_arity, self.max_bar_length) < 1:
            raise ConfigError("bounds must be positive")
        if self.samples < 0:
            raise ConfigError("samples must be non-negative")
        if self.report not in ("text", "json"):
            raise ConfigError(f"unknown report format {self.report!r}")
        if self.sabotage not in SABOTAGES:
            raise ConfigError(f"unknown sabotage {self.sabotage!r}")


@dataclass
class CheckResult:
    name: str
    input: str
    status: str
    residual_terms: int

    @property
    def ok(self):
        return self.status == "ok"


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.ok for c in self.checks)

    def add(self, name, input_desc, failures, checked):
        """One aggregated check per sweep family.

        `failures` is a list of (witness description, residual term
        count); an empty list is a pass.
        """
        if failures:
            witness, terms = failures[0]
            self.checks.append(CheckResult(
                name=name,
                input=f"{input_desc}; {len(failures)}/{checked} failed; "
                      f"witness: {witness}",
                status="fail",
                residual_terms=terms,
            ))
        else:
            self.checks.append(CheckResult(
                name=name,
                input=f"{input_desc}; {checked} inputs",
                status="ok",
                residual_terms=0,
            ))

    def to_json(self):
        return json.dumps(
            {
                "suite": self.suite,
                "params": self.params,
                "checks": [
                    {
                        "name": c.name,
                        "input": c.input,
                        "status": c.status,
                        "residual_terms": c.residual_terms,
                    }
                    for c in self.checks
                ],
                "passed": self.passed,
            },
            sort_keys=True,
            indent=2,
        ) + "\n"

    def to_text(self):
        lines = [f"suite: {self.suite}"]
        for key in sorted(self.params):
            lines.append(f"  {key}: {self.params[key]}")
        lines.append("")
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            lines.append(f"[{'ok' if c.ok else 'FAIL':4s}] "
                         f"{c.name:{width}s}  {c.input}")
        lines.append("")
        lines.append("PASSED" if self.passed else "FAILED")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# shared structure context


class _Context:
    def __init__(self, config: SuiteConfig):
        self.config = config
        dim = config.dim
        self.dim = dim
        self.pair = AlgebraPair(dim)
        contraction = None
        if config.sabotage == "flip-m21":
            contraction = flipped_contraction_scale(2)
        self.aug = augmentation_bimodule(dim, self.pair,
                                         contraction=contraction)
        self.kv = koszul_bimodule(dim, self.pair)
        self.bar = bar_bimodule(self.pair.poly, self.aug)
        self.phi = koszul_to_bar_morphism(
            dim, pair=self.pair, koszul=self.kv, bar=self.bar,
            drop_permutation_signs=(config.sabotage == "drop-phi-signs"),
        )
        self.mu = bar_to_module_morphism(self.pair.poly, self.aug)
        self.a_basis = P.sym_monomials(dim, ENTRY_WEIGHT_CAP)
        self.b_basis = P.ext_monomials(dim)
        self.k_basis = P.koszul_monomials(dim, ENTRY_WEIGHT_CAP)
        self.rng = random.Random(config.seed)

    def exhaustive(self):
        return self.dim <= 2

    def word_tuples(self, max_arity, k_pool):
        """Deterministic tuple stream: exhaustive or seeded-random."""
        if self.exhaustive():
            for m in range(max_arity + 1):
                for n in range(max_arity + 1 - m):
                    for aw in itertools.product(self.a_basis, repeat=m):
                        for k in k_pool:
                            for bw in itertools.product(self.b_basis,
                                                        repeat=n):
                                yield aw, k, bw
        else:
            rng = self.rng
            for _ in range(self.config.samples):
                m = rng.randint(0, max_arity)
                n = rng.randint(0, max_arity - m)
                aw = tuple(rng.choice(self.a_basis) for _ in range(m))
                k = rng.choice(k_pool)
                bw = tuple(rng.choice(self.b_basis) for _ in range(n))
                yield aw, k, bw

    def bar_word_pool(self, max_weight, max_length):
        a_by_w = {w: P.sym_monomials_of_weight(self.dim, w)
                  for w in range(max_weight + 1)}
        return bar_words(a_by_w, [SCALAR_ONE], max_weight, max_length)

    def kb_word_pool(self, max_length):
        return [
            TensorWord(SCALAR_ONE, mid, k2)
            for q in range(max_length + 1)
            for mid in itertools.product(self.b_basis, repeat=q)
            for k2 in self.b_basis
        ]


def _describe(aw, k, bw):
    a = ",".join(str(x) for x in aw) or "-"
    b = ",".join(str(x) for x in bw) or "-"
    return f"({a} | {k} | {b})"


# ---------------------------------------------------------------------------
# suites


def _suite_relations(ctx: _Context, report, which):
    bim = ctx.aug if which == "K" else ctx.kv
    k_pool = [SCALAR_ONE] if which == "K" else ctx.k_basis
    failures = []
    checked = 0
    for aw, k, bw in ctx.word_tuples(ctx.config.max_arity, k_pool):
        r = bimodule_relation_residual(bim, aw, k, bw)
        checked += 1
        if not r.is_zero():
            failures.append((_describe(aw, k, bw), len(r)))
    mode = "exhaustive" if ctx.exhaustive() else f"{ctx.config.samples} samples"
    report.add(
        f"bimodule-relations[{which}]",
        f"m+n<={ctx.config.max_arity}, entry weight<={ENTRY_WEIGHT_CAP}, "
        f"{mode}",
        failures, checked,
    )
    unit_rep = check_unital_bimodule(
        bim, k_pool[: 6], ctx.a_basis[: 4], ctx.b_basis[: 4], max_arity=3)
    report.add(
        f"unitality[{which}]",
        "left and right unit axioms on truncated bases",
        [(str(f[1]), 0) for f in unit_rep.failures],
        1,
    )
    if which == "KV":
        failures = []
        checked = 0
        for k in ctx.k_basis:
            once = bim.m_value(0, 0, (), k, ())
            twice = GradedElement.zero(bim.space)
            for mono, coeff in once.items():
                twice = twice + bim.m_value(0, 0, (), mono, ()).scale(coeff)
            checked += 1
            if not twice.is_zero():
                failures.append((str(k), len(twice)))
        report.add("differential-squares-to-zero[KV]",
                   f"monomials of weight<={ENTRY_WEIGHT_CAP}",
                   failures, checked)


def _suite_tensor_closure(ctx: _Context, report):
    kbb = tensor_bimodule(ctx.aug, algebra_as_bimodule(ctx.pair.ext))
    pools = [
        ("A(x)K", ctx.bar, ctx.bar_word_pool(2, 2)),
        ("K(x)B", kbb, ctx.kb_word_pool(2)),
    ]
    for label, bim, pool in pools:
        failures = []
        checked = 0
        max_arity = min(3, ctx.config.max_arity)
        if ctx.exhaustive():
            stream = (
                (aw, w, bw)
                for m in range(max_arity + 1)
                for n in range(max_arity + 1 - m)
                for aw in itertools.product(ctx.a_basis, repeat=m)
                for w in pool
                for bw in itertools.product(ctx.b_basis, repeat=n)
            )
        else:
            def sampled():
                rng = ctx.rng
                for _ in range(ctx.config.samples):
                    m = rng.randint(0, max_arity)
                    n = rng.randint(0, max_arity - m)
                    yield (
                        tuple(rng.choice(ctx.a_basis) for _ in range(m)),
                        rng.choice(pool),
                        tuple(rng.choice(ctx.b_basis) for _ in range(n)),
                    )
            stream = sampled()
        for aw, w, bw in stream:
            r = bimodule_relation_residual(bim, aw, w, bw)
            checked += 1
            if not r.is_zero():
                failures.append((_describe(aw, w, bw), len(r)))
        report.add(
            f"tensor-closure[{label}]",
            f"words weight<=2 length<=2, m+n<={max_arity}",
            failures, checked,
        )


def _suite_bar_equivalence(ctx: _Context, report):
    pool = ctx.bar_word_pool(ctx.config.max_weight, ctx.config.max_bar_length)
    arities = [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 1)]
    failures = []
    checked = 0
    for (m, n) in arities:
        if ctx.exhaustive():
            stream = (
                (aw, w, bw)
                for aw in itertools.product(ctx.a_basis, repeat=m)
                for w in pool
                for bw in itertools.product(ctx.b_basis, repeat=n)
            )
        else:
            def sampled(m=m, n=n):
                for _ in range(max(1, ctx.config.samples // len(arities))):
                    yield (
                        tuple(ctx.rng.choice(ctx.a_basis) for _ in range(m)),
                        ctx.rng.choice(pool),
                        tuple(ctx.rng.choice(ctx.b_basis) for _ in range(n)),
                    )
            stream = sampled()
        for aw, w, bw in stream:
            generic = ctx.bar.d(m, n, aw, w, bw)
            closed = ctx.bar.closed_d(m, n, aw, w, bw)
            checked += 1
            if generic != closed:
                diff = generic - closed
                failures.append((f"({m},{n}) {_describe(aw, w, bw)}",
                                 len(diff)))
    report.add(
        "bar-equivalence",
        f"generic vs closed form, words weight<={ctx.config.max_weight} "
        f"length<={ctx.config.max_bar_length}",
        failures, checked,
    )


def _suite_mu(ctx: _Context, report):
    pool = ctx.bar_word_pool(2, 2)
    failures = []
    checked = 0
    max_arity = min(3, ctx.config.max_arity)
    if ctx.exhaustive():
        stream = (
            (aw, w, bw)
            for m in range(max_arity + 1)
            for n in range(max_arity + 1 - m)
            for aw in itertools.product(ctx.a_basis, repeat=m)
            for w in pool
            for bw in itertools.product(ctx.b_basis, repeat=n)
        )
    else:
        def sampled():
            for _ in range(ctx.config.samples):
                m = ctx.rng.randint(0, max_arity)
                n = ctx.rng.randint(0, max_arity - m)
                yield (
                    tuple(ctx.rng.choice(ctx.a_basis) for _ in range(m)),
                    ctx.rng.choice(pool),
                    tuple(ctx.rng.choice(ctx.b_basis) for _ in range(n)),
                )
        stream = sampled()
    for aw, w, bw in stream:
        r = morphism_relation_residual(ctx.mu, aw, w, bw)
        checked += 1
        if not r.is_zero():
            failures.append((_describe(aw, w, bw), len(r)))
    report.add("collapse-morphism-relations",
               f"m+n<={max_arity}, words weight<=2 length<=2",
               failures, checked)

    nu = unit_section(ctx.bar)
    failures = []
    el = GradedElement.from_monomial(ctx.aug.space, SCALAR_ONE)
    back = GradedElement.zero(ctx.aug.space)
    for word, coeff in nu(el).items():
        back = back + ctx.mu.apply(0, 0, (), word, ()).scale(coeff)
    if back != el:
        failures.append(("unit section does not split the collapse", len(back)))
    report.add("collapse-after-section", "identity on the scalar module",
               failures, 1)


def _suite_homotopy(ctx: _Context, report):
    pool = ctx.bar_word_pool(ctx.config.max_weight, ctx.config.max_bar_length)
    residual = homotopy_residual(ctx.pair.poly, ctx.aug, ctx.bar)
    failures = []
    checked = 0
    for word in pool:
        r = residual(GradedElement.from_monomial(ctx.bar.space, word))
        checked += 1
        if not r.is_zero():
            failures.append((str(word), len(r)))
    report.add(
        "homotopy-residual",
        f"words weight<={ctx.config.max_weight} "
        f"length<={ctx.config.max_bar_length}",
        failures, checked,
    )


def _suite_phi(ctx: _Context, report):
    failures = []
    checked = 0
    max_arity = min(3, ctx.config.max_arity)
    for aw, k, bw in ctx.word_tuples(max_arity, ctx.k_basis):
        r = morphism_relation_residual(ctx.phi, aw, k, bw)
        checked += 1
        if not r.is_zero():
            failures.append((_describe(aw, k, bw), len(r)))
    report.add("comparison-morphism-relations",
               f"m+n<={max_arity}, entry weight<={ENTRY_WEIGHT_CAP}",
               failures, checked)

    failures = []
    checked = 0
    etas = P.koszul_monomials(ctx.dim, 3)
    for eta in etas:
        for b in ctx.b_basis:
            if b.degree == 0:
                continue
            r = right_action_chain_residual(
                ctx.dim, eta, b, pair=ctx.pair, koszul=ctx.kv, bar=ctx.bar)
            checked += 1
            if not r.is_zero():
                failures.append((f"({eta} | {b})", len(r)))
    report.add("right-action-chain-identity",
               "single exterior entries, monomials weight<=3",
               failures, checked)

    failures = []
    checked = 0
    if ctx.exhaustive():
        pairs = [
            (eta, bw)
            for eta in P.koszul_monomials(ctx.dim, 2)
            for nn in (2, 3)
            for bw in itertools.product(ctx.b_basis, repeat=nn)
        ]
    else:
        pool = P.koszul_monomials(ctx.dim, 2)
        pairs = []
        for _ in range(ctx.config.samples):
            nn = ctx.rng.choice((2, 3))
            pairs.append((
                ctx.rng.choice(pool),
                tuple(ctx.rng.choice(ctx.b_basis) for _ in range(nn)),
            ))
    for eta, bw in pairs:
        r = higher_right_action_residual(ctx.dim, eta, bw, pair=ctx.pair,
                                         bar=ctx.bar)
        checked += 1
        if not r.is_zero():
            failures.append(
                (f"({eta} | {','.join(str(b) for b in bw)})", len(r)))
    report.add("higher-right-action-vanishing",
               "two and three exterior entries",
               failures, checked)


def _suite_homology(ctx: _Context, report):
    max_w = ctx.config.max_weight
    kos = build_koszul_complex(ctx.dim, max_w)
    bar = build_bar_complex(ctx.dim, max_w, ctx.config.max_bar_length + 1)
    for cx in (kos, bar):
        failures = []
        try:
            cx.check_squares_to_zero()
        except AssertionError as exc:
            failures.append((str(exc), 1))
        report.add(f"differential-squares[{cx.name}]",
                   f"all blocks, weight<={max_w}", failures, 1)
    degrees = range(-ctx.config.max_bar_length, 1)
    for cx in (kos, bar):
        failures = []
        checked = 0
        for w in range(max_w + 1):
            for q in degrees:
                if q in cx.unreliable_degrees or q < cx.degree_range[0]:
                    continue
                got = cx.betti(w, q)
                want = 1 if (w, q) == (0, 0) else 0
                checked += 1
                if got != want:
                    failures.append((f"(w={w}, q={q}) -> {got}", got))
        report.add(f"betti[{cx.name}]",
                   f"weight<={max_w}, degrees {degrees.start}..0",
                   failures, checked)


def _suite_quasi_iso(ctx: _Context, report):
    max_w = ctx.config.max_weight
    kos = build_koszul_complex(ctx.dim, max_w)
    barc = build_bar_complex(ctx.dim, max_w, ctx.config.max_bar_length + 1)
    point = build_point_complex(max_w)
    degrees = range(-ctx.config.max_bar_length, 1)

    if ctx.config.sabotage == "zero-morphism":
        phi_map = lambda mono: GradedElement.zero(ctx.bar.space)
        mu_map = lambda word: GradedElement.zero(ctx.aug.space)
    else:
        phi_map = lambda mono: koszul_to_bar_element(ctx.dim, ctx.bar, mono)
        mu_map = lambda word: ctx.mu.apply(0, 0, (), word, ())

    def composite(mono):
        out = GradedElement.zero(ctx.aug.space)
        for word, coeff in phi_map(mono).items():
            out = out + mu_map(word).scale(coeff)
        return out

    for label, vmap, src, dst in (
        ("koszul->bar", phi_map, kos, barc),
        ("bar->module", mu_map, barc, point),
        ("koszul->module", composite, kos, point),
    ):
        verdict, rep = quasi_iso_verdict(vmap, src, dst, max_w, degrees)
        failures = [(f"(w={w}, q={q}): {status}", hs)
                    for (w, q), hs, hd, status in rep if status != "ok"]
        report.add(f"quasi-iso[{label}]",
                   f"weight<={max_w}, degrees {degrees.start}..0",
                   failures, len(rep))


_SUITE_RUNNERS = {
    "relations-K": lambda ctx, rep: _suite_relations(ctx, rep, "K"),
    "relations-KV": lambda ctx, rep: _suite_relations(ctx, rep, "KV"),
    "tensor-closure": _suite_tensor_closure,
    "bar-equivalence": _suite_bar_equivalence,
    "mu-morphism": _suite_mu,
    "homotopy": _suite_homotopy,
    "phi-theorem": _suite_phi,
    "homology": _suite_homology,
    "quasi-iso": _suite_quasi_iso,
}


def run_suite(config: SuiteConfig) -> VerificationReport:
    config.validate()
    ctx = _Context(config)
    report = VerificationReport(
        suite=config.suite,
        params={
            "dim": config.dim,
            "max_weight": config.max_weight,
            "max_arity": config.max_arity,
            "max_bar_length": config.max_bar_length,
            "samples": config.samples,
            "seed": config.seed,
            "sabotage": config.sabotage,
        },
    )
    if config.suite == "all":
        for name in SUITES[:-1]:
            _SUITE_RUNNERS[name](ctx, report)
    else:
        _SUITE_RUNNERS[config.suite](ctx, report)
    return report


def emit_report(report: VerificationReport, fmt: str, destination=None):
    payload = report.to_json() if fmt == "json" else report.to_text()
    if destination is None:
        sys.stdout.write(payload)
    else:
        with open(destination, "w") as fh:
            fh.write(payload)


# ---------------------------------------------------------------------------
# command line


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="koszulbar",
        description="Exact verifier for the Koszul/bar bimodule structures",
    )
    sub = parser.add_subparsers(dest="command")

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", default="all", choices=SUITES)
    verify.add_argument("--dim", type=int, default=2)
    verify.add_argument("--max-weight", type=int, default=3)
    verify.add_argument("--max-arity", type=int, default=4)
    verify.add_argument("--max-bar-length", type=int, default=3)
    verify.add_argument("--samples", type=int, default=500)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--report", default="text", choices=("text", "json"))
    verify.add_argument("--out", default=None, metavar="PATH")
    verify.add_argument("--sabotage", default="none", choices=SABOTAGES,
                        help="negative controls: deliberately broken builds")

    hom = sub.add_parser("homology", help="print a Betti table")
    hom.add_argument("--complex", default="koszul",
                     choices=("koszul", "bar"))
    hom.add_argument("--dim", type=int, default=2)
    hom.add_argument("--max-weight", type=int, default=3)
    hom.add_argument("--max-bar-length", type=int, default=3)
    hom.add_argument("--export", default=None, metavar="PATH",
                     help="write the differentials as sparse triplets")
    return parser


def _cmd_verify(args) -> int:
    config = SuiteConfig(
        suite=args.suite,
        dim=args.dim,
        max_weight=args.max_weight,
        max_arity=args.max_arity,
        max_bar_length=args.max_bar_length,
        samples=args.samples,
        seed=args.seed,
        report=args.report,
        sabotage=args.sabotage,
    )
    try:
        report = run_suite(config)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    emit_report(report, config.report, args.out)
    return 0 if report.passed else 1


def _cmd_homology(args) -> int:
    try:
        if args.dim < 1 or args.dim > 6:
            raise ConfigError("dim must be between 1 and 6")
        if args.complex == "koszul":
            cx = build_koszul_complex(args.dim, args.max_weight)
        else:
            cx = build_bar_complex(args.dim, args.max_weight,
                                   args.max_bar_length + 1)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    cx.check_squares_to_zero()
    degrees = [q for q in range(cx.degree_range[0], 1)
               if q not in cx.unreliable_degrees]
    sys.stdout.write(f"Betti table of the {cx.name} complex, "
                     f"dim={args.dim}\n")
    header = "weight " + "".join(f"q={q:<4d}" for q in degrees)
    sys.stdout.write(header + "\n")
    for w in range(args.max_weight + 1):
        row = f"{w:<7d}"
        for q in degrees:
            row += f"{cx.betti(w, q):<6d}"
        sys.stdout.write(row + "\n")
    if args.export:
        with open(args.export, "w") as fh:
            cx.export_triplets(fh)
        sys.stdout.write(f"differentials exported to {args.export}\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "homology":
        return _cmd_homology(args)
    parser.print_help()
    return 2


if __name__ == "__main__":
    sys.exit(main())
