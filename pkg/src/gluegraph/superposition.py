"""Assembly scripts: replayable sequences of gluings over a basis."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

from .canon import canonical_form
from .errors import GlueGraphError, GraphFormatError, GuardRejected, ScriptError
from .gluing import GluingSpec, glue, make_spec
from .graph import MultiGraph, make_named, read_gfmt
from .guards import GuardKind, first_rejection

_NAMED = re.compile(r"^([KCLO])(\d+)$")


@dataclass(frozen=True)
class Ref:
    """``$k`` names the output of step ``k``; ``#i`` names basis graph ``i``."""

    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Ref":
        if len(text) >= 2 and text[0] in "$#" and text[1:].isdigit():
            return cls(text[0], int(text[1:]))
        raise ScriptError(f"bad reference {text!r}")


@dataclass(frozen=True)
class Load:
    source: Union[int, MultiGraph]


@dataclass(frozen=True)
class Glue:
    left: Ref
    right: Ref
    pattern: MultiGraph
    lmap: tuple[int, ...]
    rmap: tuple[int, ...]
    lemap: tuple[int, ...] | None = None
    remap: tuple[int, ...] | None = None


Step = Union[Load, Glue]


@dataclass
class AssemblyScript:
    steps: list[Step] = field(default_factory=list)


@dataclass(frozen=True)
class TraceEntry:
    step: int
    graph: MultiGraph
    spec: GluingSpec | None


def _resolve(ref: Ref, results: list[MultiGraph], basis: Sequence[MultiGraph], step: int) -> MultiGraph:
    if ref.kind == "$":
        if ref.index >= len(results):
            raise ScriptError(f"step {step}: dangling reference {ref}")
        return results[ref.index]
    if ref.index >= len(basis):
        raise ScriptError(f"step {step}: basis index {ref.index} out of range")
    return basis[ref.index]


def run_script(
    script: AssemblyScript,
    basis: Sequence[MultiGraph] = (),
    guards: Sequence[GuardKind] = (),
    trace: bool = False,
    canonical: bool = False,
):
    """Execute ``script`` and return the final graph (and the trace if asked).

    With ``canonical`` every gluing must have a basis operand; a violation is
    reported like a guard rejection under the name ``canonical``.
    """
    if not script.steps:
        raise ScriptError("empty script has no result")
    results: list[MultiGraph] = []
    log: list[TraceEntry] = []
    for k, st in enumerate(script.steps):
        if isinstance(st, Load):
            if isinstance(st.source, int):
                g = _resolve(Ref("#", st.source), results, basis, k)
            else:
                g = st.source
            results.append(g)
            log.append(TraceEntry(k, g, None))
            continue
        left = _resolve(st.left, results, basis, k)
        right = _resolve(st.right, results, basis, k)
        if canonical and not (_is_basis_ref(script, st.left, basis) or _is_basis_ref(script, st.right, basis)):
            raise GuardRejected(k, "canonical", "no basis operand")
        try:
            spec = make_spec(left, right, st.pattern, st.lmap, st.rmap, st.lemap, st.remap)
        except GlueGraphError as exc:
            raise ScriptError(f"step {k}: {exc}") from exc
        bad = first_rejection(guards, spec)
        if bad is not None:
            raise GuardRejected(k, bad.tag)
        g = glue(spec)
        results.append(g)
        log.append(TraceEntry(k, g, spec))
    return (results[-1], log) if trace else results[-1]


def _is_basis_ref(script: AssemblyScript, ref: Ref, basis: Sequence[MultiGraph]) -> bool:
    if ref.kind == "#":
        return True
    if ref.index >= len(script.steps):
        return False
    st = script.steps[ref.index]
    if not isinstance(st, Load):
        return False
    if isinstance(st.source, int):
        return True
    code = canonical_form(st.source)
    return any(canonical_form(b) == code for b in basis)


def is_canonical(script: AssemblyScript, basis: Sequence[MultiGraph] = ()) -> bool:
    """Every gluing step has at least one operand loaded from the basis."""
    return all(
        _is_basis_ref(script, st.left, basis) or _is_basis_ref(script, st.right, basis)
        for st in script.steps
        if isinstance(st, Glue)
    )


def canonical_sufficient(descriptor) -> bool:
    """Whether canonical superpositions suffice by the vertex-count rule.

    True iff the operational basis is exactly ``{O0, ..., On}`` where ``n`` is
    the largest vertex count in the elemental basis. ``descriptor`` needs
    ``elemental_basis`` and ``operational_basis`` with ``finite_graphs()``.
    """
    be = descriptor.elemental_basis.finite_graphs()
    bo = descriptor.operational_basis.finite_graphs()
    if not be:
        return False
    n = max(g.n for g in be)
    want = {canonical_form(make_named("O", k)) for k in range(n + 1)}
    return {canonical_form(g) for g in bo} == want


# --- building any graph from {O1, C1, K2} -----------------------------------


def script_for_graph(g: MultiGraph) -> AssemblyScript:
    """Canonical script over basis ``[O1, C1, K2]`` whose result equals ``g``.

    Vertices are added by gluing ``O1`` on ``O0``, loops by gluing ``C1`` on
    ``O1`` and edges by gluing ``K2`` on ``O2``, following ``g.edges``.
    """
    if g.n == 0:
        raise ScriptError("the null graph is not reachable from a non-empty basis")
    o0, o1, o2 = make_named("O", 0), make_named("O", 1), make_named("O", 2)
    steps: list[Step] = [Load(0)]
    for _ in range(g.n - 1):
        steps.append(Glue(Ref("$", len(steps) - 1), Ref("#", 0), o0, (), ()))
    for u, v in g.edges:
        cur = Ref("$", len(steps) - 1)
        if u == v:
            steps.append(Glue(cur, Ref("#", 1), o1, (u,), (0,)))
        else:
            steps.append(Glue(cur, Ref("#", 2), o2, (u, v), (0, 1)))
    return AssemblyScript(steps)


UNIVERSAL_BASIS = (make_named("O", 1), make_named("C", 1), make_named("K", 2))


# --- text format -------------------------------------------------------------


def resolve_graph(token: str, base: Path | None = None) -> MultiGraph:
    """A GFMT file path (relative to ``base``) or a named graph such as ``K3``."""
    path = Path(token) if base is None else base / token
    if path.exists():
        return read_gfmt(path)
    m = _NAMED.match(token)
    if m:
        try:
            return make_named(m.group(1), int(m.group(2)))
        except ValueError as exc:
            raise ScriptError(str(exc)) from exc
    raise ScriptError(f"no such graph file {token!r}")


def _ints(token: str) -> tuple[int, ...]:
    if token == "-":
        return ()
    try:
        return tuple(int(x) for x in token.split(","))
    except ValueError as exc:
        raise ScriptError(f"bad index list {token!r}") from exc


def parse_script(text: str, base: Path | None = None) -> AssemblyScript:
    """Parse the line format.

    ``load <gfmt-path|named|#i>`` and
    ``glue <ref> <ref> pattern <gfmt-path|named> lmap <v,...> rmap <v,...> [lemap <e,...> remap <e,...>]``
    where refs are ``$k`` or ``#i``, ``-`` is an empty list and named graphs
    look like ``K3`` or ``O0``.
    """
    steps: list[Step] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            if tok[0] == "load" and len(tok) == 2:
                src = tok[1]
                if src.startswith("#") and src[1:].isdigit():
                    steps.append(Load(int(src[1:])))
                else:
                    steps.append(Load(resolve_graph(src, base)))
            elif tok[0] == "glue" and len(tok) >= 9:
                kv = dict(zip(tok[3::2], tok[4::2]))
                if len(tok[3:]) % 2 or set(kv) - {"pattern", "lmap", "rmap", "lemap", "remap"}:
                    raise ScriptError("unexpected glue arguments")
                if not {"pattern", "lmap", "rmap"} <= set(kv) or (("lemap" in kv) != ("remap" in kv)):
                    raise ScriptError("glue needs pattern, lmap, rmap (and lemap with remap)")
                steps.append(
                    Glue(
                        Ref.parse(tok[1]),
                        Ref.parse(tok[2]),
                        resolve_graph(kv["pattern"], base),
                        _ints(kv["lmap"]),
                        _ints(kv["rmap"]),
                        _ints(kv["lemap"]) if "lemap" in kv else None,
                        _ints(kv["remap"]) if "remap" in kv else None,
                    )
                )
            else:
                raise ScriptError("expected 'load' or 'glue'")
        except (ScriptError, GraphFormatError) as exc:
            raise ScriptError(f"line {lineno}: {exc}") from exc
    return AssemblyScript(steps)


def _named_token(g: MultiGraph) -> str:
    for fam in "OKCL":
        for k in range(0 if fam == "O" else 1, g.n + 1):
            try:
                if make_named(fam, k) == g:
                    return f"{fam}{k}"
            except ValueError:
                pass
    raise ScriptError("pattern has no named token; write it to a file")


def format_script(script: AssemblyScript) -> str:
    def lst(x):
        return ",".join(map(str, x)) if x else "-"

    lines = []
    for st in script.steps:
        if isinstance(st, Load):
            src = f"#{st.source}" if isinstance(st.source, int) else _named_token(st.source)
            lines.append(f"load {src}")
        else:
            line = f"glue {st.left} {st.right} pattern {_named_token(st.pattern)} lmap {lst(st.lmap)} rmap {lst(st.rmap)}"
            if st.lemap is not None:
                line += f" lemap {lst(st.lemap)} remap {lst(st.remap)}"
            lines.append(line)
    return "\n".join(lines) + "\n"
