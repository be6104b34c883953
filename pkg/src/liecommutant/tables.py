"""Comparison tables: how many candidate products a bracket needs with and
without grading, next to the counts printed for each built-in chain."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .chains import Chain, get_chain
from .grading import count_pattern, count_pruned, count_unpruned


@dataclass
class TableRow:
    k: int
    l: int
    printed_unpruned: int
    printed_pruned: int
    #: every generator product of degree k + l - 1
    unpruned: int
    #: as above, restricted to the printed degree patterns
    unpruned_forms: int | None
    #: max over pairs with monomial-level prediction (the compared value)
    pruned: int
    pruned_pair: tuple | None
    #: max over pairs with the coarser block commutation rule
    pruned_block: int
    #: all products in the printed post-grading degree patterns
    pruned_forms: int | None

    @property
    def unpruned_ok(self) -> bool:
        return self.unpruned == self.printed_unpruned

    @property
    def pruned_ok(self) -> bool:
        return self.pruned == self.printed_pruned

    @property
    def ok(self) -> bool:
        return self.unpruned_ok and self.pruned_ok

    def to_json(self) -> dict:
        d = asdict(self)
        d["pruned_pair"] = list(self.pruned_pair) if self.pruned_pair else None
        d["match"] = self.ok
        return d


def _forms_count(chain: Chain, forms: dict, k: int, l: int) -> int | None:
    if (k, l) not in forms:
        return None
    per = dict(enumerate(chain.gens.counts(), 1))
    return sum(count_pattern(per, pat) for pat in forms[(k, l)])


def count_table(chain: Chain | str) -> list[TableRow]:
    if isinstance(chain, str):
        chain = get_chain(chain)
    spec, gens = chain.spec, chain.gens
    rows = []
    for r in chain.rows:
        block = count_pruned(spec, gens, r.k, r.l, chain.commuting, mode="block")
        mono = count_pruned(spec, gens, r.k, r.l, chain.commuting, mode="monomial")
        rows.append(TableRow(
            r.k, r.l, r.unpruned, r.pruned,
            count_unpruned(gens, r.k, r.l),
            _forms_count(chain, chain.unpruned_forms, r.k, r.l),
            mono.count, mono.pair, block.count,
            _forms_count(chain, chain.pruned_forms, r.k, r.l),
        ))
    return rows


def _cell(v) -> str:
    return "-" if v is None else str(v)


def format_table(chain: Chain | str, rows: list[TableRow] | None = None) -> str:
    if isinstance(chain, str):
        chain = get_chain(chain)
    rows = count_table(chain) if rows is None else rows
    head = ("bracket", "printed", "computed", "forms", "printed'", "monomial", "block", "forms'", "match")
    body = []
    for r in rows:
        body.append((f"{{q{r.k},q{r.l}}}", str(r.printed_unpruned), str(r.unpruned), _cell(r.unpruned_forms),
                     str(r.printed_pruned), str(r.pruned), str(r.pruned_block), _cell(r.pruned_forms),
                     "yes" if r.ok else "NO"))
    widths = [max(len(x[i]) for x in [head] + body) for i in range(len(head))]
    lines = [f"# {chain.name}: {chain.description}",
             "# without grading: printed | computed | from printed forms",
             "# with grading:    printed'| monomial rule | block rule | from printed forms'"]
    for row in [head] + body:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)
