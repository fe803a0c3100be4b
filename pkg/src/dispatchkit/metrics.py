"""Dispatch-usage statistics over a method corpus.

Three ratios summarize how heavily a codebase leans on multiple
dispatch. Dispatch ratio: methods per generic function. Choice ratio:
methods per function weighted by function size (sum of squared method
counts over total methods), which is the expected number of sibling
methods seen from a random method. Degree of specialization: average
count of type-specialized formals per method.

A corpus is a flat list of per-method records, so corpora exported from
other systems can be ingested from the line-oriented text format.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dispatch import FunctionTable

__all__ = [
    "CorpusEntry",
    "EmptyCorpusError",
    "CorpusFormatError",
    "MetricsReport",
    "REFERENCE_ROWS",
    "dispatch_ratio",
    "choice_ratio",
    "degree_of_specialization",
    "metrics_report",
    "parse_corpus",
    "render_corpus",
    "corpus_of",
    "render_table",
]


class EmptyCorpusError(Exception):
    pass


class CorpusFormatError(Exception):
    def __init__(self, lineno: int, problem: str):
        self.lineno = lineno
        self.problem = problem
        super().__init__(f"line {lineno}: {problem}")


@dataclass(frozen=True)
class CorpusEntry:
    function: str
    nparams: int
    nspecialized: int
    variadic: bool = False

    def __post_init__(self):
        if self.nparams < 0 or not 0 <= self.nspecialized <= self.nparams:
            raise ValueError(
                f"need 0 <= nspecialized <= nparams, got "
                f"{self.nspecialized}/{self.nparams}")


# Reference measurements quoted from previously published corpus scans,
# kept only to demonstrate the table layout; they cannot be recomputed
# here because the original method corpora are not bundled.
REFERENCE_ROWS = {
    "Julia": ("5.86", "51.44", "1.54"),
}


def _function_sizes(corpus) -> dict[str, int]:
    sizes: dict[str, int] = {}
    for e in corpus:
        sizes[e.function] = sizes.get(e.function, 0) + 1
    return sizes


def _require(corpus):
    if not corpus:
        raise EmptyCorpusError("corpus has no method records")


def dispatch_ratio(corpus) -> Fraction:
    _require(corpus)
    sizes = _function_sizes(corpus)
    return Fraction(len(corpus), len(sizes))


def choice_ratio(corpus) -> Fraction:
    _require(corpus)
    sizes = _function_sizes(corpus)
    return Fraction(sum(m * m for m in sizes.values()), len(corpus))


def degree_of_specialization(corpus) -> Fraction:
    _require(corpus)
    return Fraction(sum(e.nspecialized for e in corpus), len(corpus))


@dataclass(frozen=True)
class MetricsReport:
    dr: Fraction
    cr: Fraction
    dos: Fraction
    functions: int
    methods: int

    def cells(self) -> tuple:
        return (f"{float(self.dr):.2f}", f"{float(self.cr):.2f}",
                f"{float(self.dos):.2f}")

    def as_dict(self) -> dict:
        dr, cr, dos = self.cells()
        return {"functions": self.functions, "methods": self.methods,
                "DR": dr, "CR": cr, "DoS": dos}


def metrics_report(corpus) -> MetricsReport:
    _require(corpus)
    return MetricsReport(
        dispatch_ratio(corpus),
        choice_ratio(corpus),
        degree_of_specialization(corpus),
        len(_function_sizes(corpus)),
        len(corpus),
    )


def render_table(rows) -> str:
    """Aligned text table; rows are (label, (dr, cr, dos)) pairs."""
    header = ("corpus", "DR", "CR", "DoS")
    table = [header] + [(label, *cells) for label, cells in rows]
    widths = [max(len(r[i]) for r in table) for i in range(4)]
    lines = []
    for r in table:
        first = r[0].ljust(widths[0])
        rest = "  ".join(c.rjust(w) for c, w in zip(r[1:], widths[1:]))
        lines.append(f"{first}  {rest}".rstrip())
    return "\n".join(lines)


# --------------------------------------------------------- persistence


def parse_corpus(text: str) -> list[CorpusEntry]:
    """One record per line: function, nparams, nspecialized, variadic,
    tab-separated. Blank lines and # comments are skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise CorpusFormatError(
                lineno, f"expected 4 tab-separated fields, got {len(parts)}")
        name, nparams, nspec, variadic = parts
        try:
            np_, ns = int(nparams), int(nspec)
        except ValueError:
            raise CorpusFormatError(lineno, "counts must be integers") from None
        if variadic not in ("0", "1"):
            raise CorpusFormatError(lineno, "variadic flag must be 0 or 1")
        try:
            out.append(CorpusEntry(name, np_, ns, variadic == "1"))
        except ValueError as err:
            raise CorpusFormatError(lineno, str(err)) from None
    return out


def render_corpus(corpus) -> str:
    lines = [f"{e.function}\t{e.nparams}\t{e.nspecialized}\t{int(e.variadic)}"
             for e in corpus]
    return "\n".join(lines) + ("\n" if lines else "")


def corpus_of(functions: FunctionTable) -> list[CorpusEntry]:
    """Scan live method tables; a variadic slot counts as one parameter,
    specialized iff annotated."""
    out = []
    for gf in functions:
        for m in gf.methods:
            sig = m.signature
            out.append(CorpusEntry(
                gf.name,
                len(sig.params),
                sum(1 for s in sig.specialized if s),
                sig.variadic,
            ))
    return out
