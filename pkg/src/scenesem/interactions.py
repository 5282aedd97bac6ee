"""Interaction recognition over detected fluent intervals.

An interaction definition is a small temporal constraint network: nodes are
required fluent intervals (or sub-interactions), edges are admissible interval
relations between them (the pseudo-node "event" stands for the interaction's
own interval).  Recognition exhaustively joins the detected fluent intervals
against each definition, binds participants, and returns events carrying a
full grounding tree, so every reported interaction can be traced back to the
motion dynamics that produced it.

Matching is an exhaustive interval join, not incremental streaming: the
interval lists at desk scale are small and auditability beats throughput.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import geometry
from .calculi import AllenRelation, allen
from .config import Config
from .errors import UnknownInteractionError
from .fluents import Fluent, FluentInterval, PatternEvaluator
from .geometry import TimeInterval
from .sth import ObjectKind, SceneRecording

_A = AllenRelation


@dataclass(frozen=True)
class RoleSpec:
    name: str
    kind: ObjectKind


@dataclass(frozen=True)
class NodeSpec:
    """One required constituent: a fluent pattern or a sub-interaction.

    args are role expressions: a role name ("P", "O", "FS") or "hand(P)",
    which binds to whichever of the person's hands yields a match.
    """

    key: str
    pattern: str | None = None
    sub_interaction: str | None = None
    args: tuple[str, ...] = ()


@dataclass(frozen=True)
class EdgeSpec:
    """Admissible interval relations between two nodes ('event' = the
    interaction's own interval)."""

    a: str
    b: str
    relations: frozenset[AllenRelation]

    def describe(self) -> str:
        labels = "|".join(sorted(r.value for r in self.relations))
        return f"{self.a} {labels} {self.b}"


@dataclass(frozen=True)
class InteractionDef:
    name: str
    roles: tuple[RoleSpec, ...]
    nodes: tuple[NodeSpec, ...]
    edges: tuple[EdgeSpec, ...]
    start_node: str
    end_node: str
    guards: tuple[str, ...] = ()
    span: str = "anchors"          # "anchors" | "intersection"
    top_level: bool = True


@dataclass(frozen=True)
class Grounding:
    """One node of an event's grounding tree."""

    key: str
    kind: str                      # "fluent" | "interaction"
    label: str
    args: tuple[str, ...]
    interval: TimeInterval
    children: tuple[Grounding, ...] = ()

    def to_dict(self) -> dict:
        out = {
            "node": self.key,
            "kind": self.kind,
            "name": self.label,
            "args": list(self.args),
            "t1": self.interval.t1,
            "t2": self.interval.t2,
        }
        if self.children:
            out["grounding"] = [c.to_dict() for c in self.children]
        return out


@dataclass(frozen=True)
class GroundedEdge:
    a: str
    b: str
    relation: str                  # the Allen label that actually holds

    def to_dict(self) -> dict:
        return {"a": self.a, "relation": self.relation, "b": self.b}


@dataclass(frozen=True)
class InteractionEvent:
    name: str
    participants: tuple[tuple[str, str], ...]   # (role, object id), role-sorted
    interval: TimeInterval
    grounding: tuple[Grounding, ...]
    edges: tuple[GroundedEdge, ...]
    notes: tuple[str, ...] = ()

    def participant(self, role: str) -> str:
        for r, v in self.participants:
            if r == role:
                return v
        raise KeyError(role)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "participants": {r: v for r, v in self.participants},
            "t1": self.interval.t1,
            "t2": self.interval.t2,
            "grounding": [gr.to_dict() for gr in self.grounding],
            "constraints": [e.to_dict() for e in self.edges],
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# built-in definitions
# ---------------------------------------------------------------------------

_OVERLAPPY = frozenset({
    _A.STARTS, _A.STARTED_BY, _A.DURING, _A.CONTAINS, _A.FINISHES,
    _A.FINISHED_BY, _A.EQUALS, _A.OVERLAPS, _A.OVERLAPPED_BY,
})
_THEN = frozenset({_A.BEFORE, _A.MEETS, _A.OVERLAPS})
_WITHIN = frozenset({_A.STARTS, _A.DURING, _A.FINISHES, _A.EQUALS})
_EVENT_START = frozenset({_A.STARTS, _A.EQUALS})
_EVENT_END = frozenset({_A.FINISHES, _A.EQUALS, _A.FINISHED_BY})


def builtin_defs() -> list[InteractionDef]:
    """The stock human-object and locomotion interaction definitions."""
    person = RoleSpec("P", ObjectKind.PERSON)
    obj = RoleSpec("O", ObjectKind.OBJECT)
    structure = RoleSpec("FS", ObjectKind.FLOORPLAN_STRUCTURE)

    grasp = InteractionDef(
        name="grasp",
        roles=(person, obj),
        nodes=(
            NodeSpec("touch", pattern="touching", args=("hand(P)", "O")),
            NodeSpec("still", pattern="stationary", args=("hand(P)",)),
        ),
        edges=(EdgeSpec("still", "touch", _OVERLAPPY),),
        start_node="touch",
        end_node="touch",
        span="intersection",
        top_level=False,
    )

    reach_for = InteractionDef(
        name="reach_for",
        roles=(person, obj),
        nodes=(
            NodeSpec("approach", pattern="approaching", args=("hand(P)", "O")),
            NodeSpec("touch", pattern="touching", args=("hand(P)", "O")),
        ),
        edges=(
            EdgeSpec("approach", "touch", frozenset({_A.MEETS})),
            EdgeSpec("approach", "event", frozenset({_A.STARTS})),
            EdgeSpec("touch", "event", frozenset({_A.FINISHES})),
        ),
        start_node="approach",
        end_node="touch",
    )

    pick_up = InteractionDef(
        name="pick_up",
        roles=(person, obj),
        nodes=(
            NodeSpec("grasp", sub_interaction="grasp", args=("P", "O")),
            NodeSpec("hold", pattern="attached", args=("hand(P)", "O")),
            NodeSpec("lift", pattern="ascending", args=("O",)),
        ),
        edges=(
            EdgeSpec("grasp", "lift", _THEN),
            EdgeSpec("grasp", "hold", frozenset({_A.STARTS, _A.DURING, _A.EQUALS})),
            EdgeSpec("lift", "hold", _WITHIN | frozenset({_A.OVERLAPS, _A.OVERLAPPED_BY})),
            EdgeSpec("grasp", "event", _EVENT_START),
            EdgeSpec("lift", "event", frozenset({_A.FINISHES, _A.EQUALS})),
        ),
        start_node="grasp",
        end_node="lift",
        guards=("lift_follows_grasp",),
    )

    put_down = InteractionDef(
        name="put_down",
        roles=(person, obj),
        nodes=(
            NodeSpec("lower", pattern="descending", args=("O",)),
            NodeSpec("touch", pattern="touching", args=("hand(P)", "O")),
            NodeSpec("rest", pattern="stationary", args=("O",)),
        ),
        edges=(
            EdgeSpec("lower", "touch", frozenset({_A.FINISHES, _A.DURING, _A.EQUALS})),
            EdgeSpec("lower", "rest", _THEN),
            EdgeSpec("lower", "event", _EVENT_START),
            EdgeSpec("touch", "event", _EVENT_END),
        ),
        start_node="lower",
        end_node="touch",
        guards=("carried_while_lowering", "settles_after_lowering"),
    )

    pass_over = InteractionDef(
        name="pass_over",
        roles=(RoleSpec("P1", ObjectKind.PERSON), RoleSpec("P2", ObjectKind.PERSON), obj),
        nodes=(
            NodeSpec("pickup", sub_interaction="pick_up", args=("P1", "O")),
            NodeSpec("carry", pattern="attached", args=("hand(P1)", "O")),
            NodeSpec("offer", pattern="approaching", args=("hand(P1)", "hand(P2)")),
            NodeSpec("take", sub_interaction="grasp", args=("P2", "O")),
        ),
        edges=(
            EdgeSpec("pickup", "offer", _THEN | frozenset({_A.CONTAINS, _A.FINISHED_BY, _A.STARTED_BY})),
            EdgeSpec("offer", "carry", _OVERLAPPY),
            EdgeSpec("offer", "take", _THEN),
            EdgeSpec("pickup", "take", _THEN),
            EdgeSpec("pickup", "event", _EVENT_START),
            EdgeSpec("take", "event", frozenset({_A.FINISHES, _A.EQUALS})),
        ),
        start_node="pickup",
        end_node="take",
        guards=("distinct_persons", "released_by_giver"),
    )

    moves_into = InteractionDef(
        name="moves_into",
        roles=(person, structure),
        nodes=(NodeSpec("entry", pattern="moving_into", args=("P", "FS")),),
        edges=(
            EdgeSpec("entry", "event", frozenset({_A.EQUALS})),
        ),
        start_node="entry",
        end_node="entry",
    )

    passes = InteractionDef(
        name="passes",
        roles=(person, structure),
        nodes=(
            NodeSpec("entry", pattern="moving_into", args=("P", "FS")),
            NodeSpec("through", pattern="inside", args=("P", "FS")),
            NodeSpec("exit", pattern="moving_out", args=("P", "FS")),
        ),
        edges=(
            EdgeSpec("entry", "through", frozenset({_A.MEETS, _A.FINISHED_BY, _A.OVERLAPS})),
            EdgeSpec("through", "exit", frozenset({_A.MEETS, _A.STARTS, _A.OVERLAPS})),
            EdgeSpec("entry", "exit", frozenset({_A.BEFORE, _A.MEETS, _A.OVERLAPS})),
            EdgeSpec("entry", "event", _EVENT_START),
            EdgeSpec("exit", "event", frozenset({_A.FINISHES, _A.EQUALS})),
        ),
        start_node="entry",
        end_node="exit",
        guards=("opposite_ends",),
    )

    return [grasp, reach_for, pick_up, put_down, pass_over, moves_into, passes]


# ---------------------------------------------------------------------------
# guards
# ---------------------------------------------------------------------------

@dataclass
class _GuardCtx:
    evaluator: PatternEvaluator
    scene: SceneRecording
    cfg: Config
    binding: dict[str, str]        # role -> object id (includes hand(...) keys)
    intervals: dict[str, TimeInterval]
    event_interval: TimeInterval


def _guard_lift_follows_grasp(ctx: _GuardCtx):
    gap = ctx.intervals["lift"].t1 - ctx.intervals["grasp"].t2
    ok = gap <= ctx.cfg.patterns.window
    return ok, f"lift starts {max(gap, 0.0):.3f} s after grasp"


def _guard_carried_while_lowering(ctx: _GuardCtx):
    hand = ctx.binding["hand(P)"]
    obj = ctx.binding["O"]
    # window statistics blur by half a window at the release boundary
    half = ctx.cfg.patterns.window / 2.0
    lower = ctx.intervals["lower"]
    t1, t2 = lower.t1 + half, lower.t2 - half
    if t2 - t1 < ctx.cfg.patterns.dur_min:
        return True, None
    ok = ctx.evaluator.holds_in(Fluent("attached", (hand, obj)), TimeInterval(t1, t2))
    return ok, "object attached to the hand while lowering"


def _guard_settles_after_lowering(ctx: _GuardCtx):
    gap = ctx.intervals["rest"].t1 - ctx.intervals["lower"].t2
    ok = gap <= ctx.cfg.patterns.window
    return ok, f"object at rest {max(gap, 0.0):.3f} s after lowering"


def _guard_distinct_persons(ctx: _GuardCtx):
    return ctx.binding["P1"] != ctx.binding["P2"], None


def _guard_released_by_giver(ctx: _GuardCtx):
    """The giver's contact with the object must end within the event."""
    hand = ctx.binding["hand(P1)"]
    obj = ctx.binding["O"]
    carry = ctx.intervals["carry"]
    touches = ctx.evaluator.detect(Fluent("touching", (hand, obj)))
    ends = [fi.interval.t2 for fi in touches
            if fi.interval.t1 <= carry.t2 and fi.interval.t2 >= carry.t1]
    if not ends:
        return False, None
    ok = max(ends) <= ctx.event_interval.t2 + 1e-9
    return ok, "giver releases the object before the event ends"


def _guard_opposite_ends(ctx: _GuardCtx):
    """Entry and exit must happen through opposite ends of the structure's
    major axis."""
    fs = ctx.scene.history(ctx.binding["FS"])
    entity = geometry.project_to_floor(fs.entities[0]).entity
    center, axis, major_len, _ = geometry.rect_axis(entity)
    p_hist = ctx.scene.history(ctx.binding["P"])

    def proj_at(t: float) -> float:
        p = geometry.centroid(_entity_at_clamped(p_hist, t))
        return (p.x - center[0]) * axis[0] + (p.y - center[1]) * axis[1]

    a = proj_at(ctx.intervals["entry"].t1)
    b = proj_at(ctx.intervals["exit"].t2)
    ok = a * b < 0 and min(abs(a), abs(b)) >= major_len / 4.0
    return ok, f"traverses the major axis from {a:+.2f} m to {b:+.2f} m"


def _entity_at_clamped(h, t):
    from . import sth as _sth
    return _sth.entity_at(h, min(max(t, h.start), h.end))


_GUARDS = {
    "lift_follows_grasp": _guard_lift_follows_grasp,
    "carried_while_lowering": _guard_carried_while_lowering,
    "settles_after_lowering": _guard_settles_after_lowering,
    "distinct_persons": _guard_distinct_persons,
    "released_by_giver": _guard_released_by_giver,
    "opposite_ends": _guard_opposite_ends,
}


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------

def _hands_of(scene: SceneRecording, person_id: str) -> list[str]:
    out = []
    for oid, h in scene.histories.items():
        if h.obj.kind == ObjectKind.BODY_PART and h.obj.parent == person_id \
                and h.obj.class_label in ("hand_left", "hand_right"):
            out.append(oid)
    return sorted(out)


def _role_candidates(scene: SceneRecording, role: RoleSpec) -> list[str]:
    return sorted(o.id for o in scene.objects_of_kind(role.kind))


def _hand_roles(d: InteractionDef) -> list[str]:
    roles = set()
    for node in d.nodes:
        for arg in node.args:
            if arg.startswith("hand(") and arg.endswith(")"):
                roles.add(arg[5:-1])
    return sorted(roles)


def _resolve_arg(arg: str, binding: dict[str, str]) -> str:
    return binding[arg] if arg.startswith("hand(") else binding[arg]


def _bindings(scene: SceneRecording, d: InteractionDef):
    """Enumerate role assignments plus hand choices, deterministically."""
    pools = [_role_candidates(scene, r) for r in d.roles]
    if any(not p for p in pools):
        return

    def rec(i: int, acc: dict[str, str]):
        if i == len(d.roles):
            yield dict(acc)
            return
        role = d.roles[i]
        for cand in pools[i]:
            if cand in acc.values():
                continue  # one object per role
            acc[role.name] = cand
            yield from rec(i + 1, acc)
            del acc[role.name]

    for base in rec(0, {}):
        hand_roles = _hand_roles(d)
        if not hand_roles:
            yield base
            continue
        options = [_hands_of(scene, base[r]) for r in hand_roles]
        if any(not o for o in options):
            continue

        def hands(j: int, acc: dict[str, str]):
            if j == len(hand_roles):
                yield {**base, **acc}
                return
            for hand in options[j]:
                acc[f"hand({hand_roles[j]})"] = hand
                yield from hands(j + 1, acc)
                del acc[f"hand({hand_roles[j]})"]

        yield from hands(0, {})


def recognize(scene: SceneRecording, defs: list[InteractionDef] | None = None,
              cfg: Config | None = None, include_sub: bool = False) -> list[InteractionEvent]:
    """All maximal interaction events in the recording, sorted by start time.

    Overlapping matches of the same definition and participants are collapsed
    to the longest one; sub-interactions (grasp) appear only inside grounding
    trees unless include_sub is set.
    """
    cfg = cfg or Config()
    defs = list(builtin_defs() if defs is None else defs)
    evaluator = PatternEvaluator(scene, cfg)
    by_name = {d.name: d for d in defs}
    ordered = _toposort(defs, by_name)

    events_by_def: dict[str, list[InteractionEvent]] = {}
    for d in ordered:
        found: list[InteractionEvent] = []
        for binding in _bindings(scene, d):
            found.extend(_match(d, binding, evaluator, scene, cfg,
                                events_by_def, by_name))
        events_by_def[d.name] = _dedup(found)

    out = []
    for d in defs:
        if d.top_level or include_sub:
            out.extend(events_by_def.get(d.name, []))
    out.sort(key=lambda e: (e.interval.t1, e.interval.t2, e.name, e.participants))
    return out


def _toposort(defs, by_name):
    order: list[InteractionDef] = []
    seen: set[str] = set()

    def visit(d: InteractionDef, trail: tuple[str, ...]):
        if d.name in seen:
            return
        if d.name in trail:
            raise UnknownInteractionError(f"cyclic sub-interaction reference at {d.name}")
        for node in d.nodes:
            if node.sub_interaction:
                sub = by_name.get(node.sub_interaction)
                if sub is None:
                    raise UnknownInteractionError(
                        f"{d.name} references unknown sub-interaction {node.sub_interaction}")
                visit(sub, trail + (d.name,))
        seen.add(d.name)
        order.append(d)

    for d in defs:
        visit(d, ())
    return order


def _match(d: InteractionDef, binding: dict[str, str], evaluator: PatternEvaluator,
           scene: SceneRecording, cfg: Config,
           events_by_def: dict[str, list[InteractionEvent]],
           by_name: dict[str, InteractionDef]) -> list[InteractionEvent]:
    # candidate intervals per node
    candidates: list[list] = []
    for node in d.nodes:
        if node.pattern is not None:
            args = tuple(_resolve_arg(a, binding) for a in node.args)
            cands = evaluator.detect(Fluent(node.pattern, args))
        else:
            sub_def = by_name[node.sub_interaction]
            sub = events_by_def.get(node.sub_interaction, [])
            cands = [ev for ev in sub
                     if all(ev.participant(r.name) == binding[arg]
                            for r, arg in zip(sub_def.roles, node.args))]
        if not cands:
            return []
        candidates.append(cands)

    node_keys = [n.key for n in d.nodes]
    inner_edges = [e for e in d.edges if e.b != "event" and e.a != "event"]
    event_edges = [e for e in d.edges if "event" in (e.a, e.b)]
    out: list[InteractionEvent] = []

    def interval_of(x) -> TimeInterval:
        return x.interval

    def rec(i: int, chosen: list):
        if i == len(d.nodes):
            out.extend(_finish(d, binding, chosen, evaluator, scene, cfg,
                               node_keys, inner_edges, event_edges))
            return
        for cand in candidates[i]:
            ok = True
            for e in inner_edges:
                ia = node_keys.index(e.a) if e.a in node_keys else -1
                ib = node_keys.index(e.b) if e.b in node_keys else -1
                if ia > i or ib > i or ia < 0 or ib < 0:
                    continue
                xs = chosen + [cand]
                rel = allen(interval_of(xs[ia]), interval_of(xs[ib]), cfg.calculi)
                if rel not in e.relations:
                    ok = False
                    break
            if ok:
                chosen.append(cand)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def _finish(d, binding, chosen, evaluator, scene, cfg,
            node_keys, inner_edges, event_edges):
    intervals = {k: c.interval for k, c in zip(node_keys, chosen)}
    if d.span == "intersection":
        t1 = max(iv.t1 for iv in intervals.values())
        t2 = min(iv.t2 for iv in intervals.values())
    else:
        t1 = intervals[d.start_node].t1
        t2 = intervals[d.end_node].t2
    if not (t2 - t1 >= cfg.patterns.dur_min):
        return []
    event_iv = TimeInterval(t1, t2)

    grounded_edges: list[GroundedEdge] = []
    for e in inner_edges:
        rel = allen(intervals[e.a], intervals[e.b], cfg.calculi)
        grounded_edges.append(GroundedEdge(e.a, e.b, rel.value))
    for e in event_edges:
        ia = intervals[e.a] if e.a != "event" else event_iv
        ib = intervals[e.b] if e.b != "event" else event_iv
        rel = allen(ia, ib, cfg.calculi)
        if rel not in e.relations:
            return []
        grounded_edges.append(GroundedEdge(e.a, e.b, rel.value))

    ctx = _GuardCtx(evaluator, scene, cfg, binding, intervals, event_iv)
    notes = []
    for guard_name in d.guards:
        ok, note = _GUARDS[guard_name](ctx)
        if not ok:
            return []
        if note:
            notes.append(note)
    for key in sorted(k for k in binding if k.startswith("hand(")):
        notes.append(f"{key} bound to {binding[key]}")

    grounding = []
    for node, c in zip(d.nodes, chosen):
        if isinstance(c, FluentInterval):
            grounding.append(Grounding(node.key, "fluent", c.fluent.name,
                                       c.fluent.args, c.interval))
        else:
            grounding.append(Grounding(node.key, "interaction", c.name,
                                       tuple(v for _, v in c.participants),
                                       c.interval, children=c.grounding))
    participants = tuple(sorted((r.name, binding[r.name]) for r in d.roles))
    return [InteractionEvent(d.name, participants, event_iv,
                             tuple(grounding), tuple(grounded_edges), tuple(notes))]


def _dedup(events: list[InteractionEvent]) -> list[InteractionEvent]:
    """Among overlapping events with identical name+participants keep the
    longest (ties: earliest)."""
    groups: dict = {}
    for ev in events:
        groups.setdefault((ev.name, ev.participants), []).append(ev)
    kept: list[InteractionEvent] = []
    for _, group in sorted(groups.items()):
        group.sort(key=lambda e: (-(e.interval.t2 - e.interval.t1), e.interval.t1, e.interval.t2))
        accepted: list[InteractionEvent] = []
        for ev in group:
            if all(ev.interval.t2 <= o.interval.t1 or ev.interval.t1 >= o.interval.t2
                   for o in accepted):
                accepted.append(ev)
        kept.extend(accepted)
    kept.sort(key=lambda e: (e.interval.t1, e.interval.t2, e.name, e.participants))
    return kept


# ---------------------------------------------------------------------------
# querying and reporting
# ---------------------------------------------------------------------------

def occurs_in_query(name: str, bound: dict[str, str] | None,
                    events: list[InteractionEvent],
                    interval: TimeInterval | None = None,
                    relation: AllenRelation | frozenset | None = None,
                    defs: list[InteractionDef] | None = None,
                    cfg: Config | None = None) -> list[tuple[InteractionEvent, dict[str, str]]]:
    """Unify a partially bound interaction pattern against recognized events.

    Returns (event, bindings-for-unbound-roles) pairs.  When an interval and
    relation are given, only events whose interval stands in that relation to
    the query interval survive.
    """
    defs = builtin_defs() if defs is None else defs
    known = {d.name for d in defs}
    if name not in known:
        raise UnknownInteractionError(f"unknown interaction: {name}")
    bound = bound or {}
    rels: frozenset[AllenRelation] | None
    if relation is None:
        rels = None
    elif isinstance(relation, AllenRelation):
        rels = frozenset({relation})
    else:
        rels = frozenset(relation)
    out = []
    for ev in events:
        if ev.name != name:
            continue
        parts = {r: v for r, v in ev.participants}
        if any(parts.get(r) != v for r, v in bound.items()):
            continue
        if interval is not None and rels is not None:
            if allen(ev.interval, interval, (cfg or Config()).calculi) not in rels:
                continue
        out.append((ev, {r: v for r, v in parts.items() if r not in bound}))
    return out


def verify_event(event: InteractionEvent, cfg: Config | None = None) -> bool:
    """Re-check every recorded constraint edge with the interval calculus;
    used to audit recognition soundness."""
    cfg = cfg or Config()
    ivs = {g.key: g.interval for g in event.grounding}
    ivs["event"] = event.interval
    for e in event.edges:
        got = allen(ivs[e.a], ivs[e.b], cfg.calculi)
        if got.value != e.relation:
            return False
    return True


def grounding_report(event: InteractionEvent) -> str:
    """Human-readable grounding tree: one line per constituent, with its
    interval and the interval relations tying the network together."""
    lines = []
    parts = ", ".join(f"{r}={v}" for r, v in event.participants)
    lines.append(f"{event.name}({parts}) over [{event.interval.t1:.3f}, {event.interval.t2:.3f}]")

    def links_for(key: str) -> str:
        rels = [f"{e.relation} {e.b}" if e.a == key else f"{e.relation}^-1 {e.a}"
                for e in event.edges if key in (e.a, e.b)]
        return ("   [" + "; ".join(rels) + "]") if rels else ""

    def emit(node: Grounding, prefix: str, last: bool, top: bool):
        branch = "`- " if last else "|- "
        args = ", ".join(node.args)
        line = (f"{prefix}{branch}{node.label}({args}) @ "
                f"[{node.interval.t1:.3f}, {node.interval.t2:.3f}]")
        if top:
            line += links_for(node.key)
        lines.append(line)
        child_prefix = prefix + ("   " if last else "|  ")
        for i, child in enumerate(node.children):
            emit(child, child_prefix, i == len(node.children) - 1, False)

    for i, node in enumerate(event.grounding):
        emit(node, "", i == len(event.grounding) - 1, True)
    for note in event.notes:
        lines.append(f"   note: {note}")
    return "\n".join(lines) + "\n"
