"""Scenario configuration: a minimal key-value tree grammar and its builders.

Grammar (informal)::

    config    := statement*
    statement := IDENT WSTRING? block     # named section, e.g. schedule "A" { ... }
               | IDENT '=' value          # top-level assignment, e.g. wealth = 10000
    block     := '{' item* '}'
    item      := IDENT '=' value [',']
               | IDENT STRING? block [',']
    value     := NUMBER | STRING | 'true' | 'false' | list | block
    list      := '[' [value (',' value)* [',']] ']'

Comments run from '#' to end of line.  Strings are double-quoted with \\"
and \\\\ escapes.  Item separators inside blocks are optional (newline or
comma); list elements require commas.  Unknown keys are hard errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .discount import (
    DiscountSpec,
    Exponential,
    GeneralizedHyperbolic,
    Hybrid,
    Hyperbolic,
    InverseLog,
    QuasiHyperbolic,
    ScaleDependent,
    StateDependent,
    TabulatedEta,
)
from .errors import ConfigError
from .gamble import Gamble, StateSpace
from .intertemporal import DatedPayment, PaymentSchedule
from .utility import (
    Composed,
    Linear,
    LogShift,
    PhiPoly,
    PhiPower,
    PhiScale,
    PhiTable,
    PowerDiscounted,
    Sqrt,
    Utility,
)

__all__ = ["ConfigTree", "parse", "serialize", "Scenario", "build_scenario"]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<number>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>[{}\[\]=,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    value: object
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ConfigError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "newline":
            line += 1
            line_start = m.end()
        elif kind == "number":
            raw = m.group()
            value = float(raw) if any(c in raw for c in ".eE") else int(raw)
            tokens.append(_Token("number", value, line, col))
        elif kind == "ident":
            word = m.group()
            if word in ("true", "false"):
                tokens.append(_Token("bool", word == "true", line, col))
            else:
                tokens.append(_Token("ident", word, line, col))
        elif kind == "string":
            raw = m.group()[1:-1]
            value = raw.replace('\\"', '"').replace("\\\\", "\\")
            tokens.append(_Token("string", value, line, col))
        elif kind == "punct":
            tokens.append(_Token(m.group(), m.group(), line, col))
        pos = m.end()
    tokens.append(_Token("eof", None, line, len(text) - line_start + 1))
    return tokens


@dataclass
class ConfigTree:
    """Parsed configuration: data tree, which keys were label-style, key positions."""

    data: dict
    labeled: set[str] = dc_field(default_factory=set)
    positions: dict[tuple, tuple[int, int]] = dc_field(default_factory=dict)

    def where(self, path: tuple) -> tuple[int | None, int | None]:
        return self.positions.get(tuple(path), (None, None))


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0
        self.positions: dict[tuple, tuple[int, int]] = {}

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ConfigError(f"expected {kind!r}, got {tok.value!r}", tok.line, tok.column)
        return tok

    def parse_config(self) -> ConfigTree:
        data: dict = {}
        labeled: set[str] = set()
        while self.peek().kind != "eof":
            tok = self.expect("ident")
            key = tok.value
            path = (key,)
            if self.peek().kind == "=":
                self.next()
                if key in data:
                    raise ConfigError(f"duplicate key {key!r}", tok.line, tok.column)
                self.positions[path] = (tok.line, tok.column)
                data[key] = self.parse_value(path)
            elif self.peek().kind == "string":
                label = self.next().value
                if key in data and key not in labeled:
                    raise ConfigError(
                        f"key {key!r} mixes labeled and plain forms", tok.line, tok.column
                    )
                group = data.setdefault(key, {})
                labeled.add(key)
                if label in group:
                    raise ConfigError(
                        f"duplicate {key} label {label!r}", tok.line, tok.column
                    )
                self.positions[(key, label)] = (tok.line, tok.column)
                group[label] = self.parse_block((key, label))
            elif self.peek().kind == "{":
                if key in data:
                    raise ConfigError(f"duplicate key {key!r}", tok.line, tok.column)
                self.positions[path] = (tok.line, tok.column)
                data[key] = self.parse_block(path)
            else:
                nxt = self.peek()
                raise ConfigError(
                    f"expected '=', label, or block after {key!r}", nxt.line, nxt.column
                )
        return ConfigTree(data=data, labeled=labeled, positions=self.positions)

    def parse_block(self, path: tuple) -> dict:
        self.expect("{")
        block: dict = {}
        while True:
            tok = self.peek()
            if tok.kind == "}":
                self.next()
                return block
            if tok.kind == ",":
                self.next()
                continue
            tok = self.expect("ident")
            key = tok.value
            if key in block:
                raise ConfigError(f"duplicate key {key!r}", tok.line, tok.column)
            sub = path + (key,)
            self.positions[sub] = (tok.line, tok.column)
            if self.peek().kind == "=":
                self.next()
                block[key] = self.parse_value(sub)
            elif self.peek().kind == "{":
                block[key] = self.parse_block(sub)
            else:
                nxt = self.peek()
                raise ConfigError(
                    f"expected '=' or block after {key!r}", nxt.line, nxt.column
                )

    def parse_value(self, path: tuple):
        tok = self.peek()
        if tok.kind in ("number", "string", "bool"):
            return self.next().value
        if tok.kind == "[":
            return self.parse_list(path)
        if tok.kind == "{":
            return self.parse_block(path)
        raise ConfigError(f"expected a value, got {tok.value!r}", tok.line, tok.column)

    def parse_list(self, path: tuple) -> list:
        self.expect("[")
        items: list = []
        if self.peek().kind == "]":
            self.next()
            return items
        while True:
            items.append(self.parse_value(path + (len(items),)))
            tok = self.next()
            if tok.kind == "]":
                return items
            if tok.kind != ",":
                raise ConfigError(
                    f"expected ',' or ']' in list, got {tok.value!r}", tok.line, tok.column
                )
            if self.peek().kind == "]":
                self.next()
                return items


def parse(text: str) -> ConfigTree:
    """Parse configuration text; raises ConfigError with line/column on failure."""
    return _Parser(_tokenize(text)).parse_config()


def _emit_value(value, indent: int) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, list):
        return "[" + ", ".join(_emit_value(v, indent) for v in value) + "]"
    if isinstance(value, dict):
        inner = ", ".join(f"{k} = {_emit_value(v, indent)}" for k, v in value.items())
        return "{" + inner + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def serialize(tree: ConfigTree) -> str:
    """Render a tree back to config text that parses to an identical structure."""
    lines = []
    for key, value in tree.data.items():
        if key in tree.labeled:
            for label, block in value.items():
                body = "".join(
                    f"  {k} = {_emit_value(v, 1)}\n" for k, v in block.items()
                )
                lines.append(f'{key} "{_escape(label)}" {{\n{body}}}\n')
        elif isinstance(value, dict):
            body = "".join(f"  {k} = {_emit_value(v, 1)}\n" for k, v in value.items())
            lines.append(f"{key} {{\n{body}}}\n")
        else:
            lines.append(f"{key} = {_emit_value(value, 0)}\n")
    return "".join(lines)


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


@dataclass
class Scenario:
    """Validated scenario: every component invariant checked at build time."""

    utility: Utility
    discount: DiscountSpec | None
    states: StateSpace | None
    schedules: dict[str, PaymentSchedule]
    scan_shifts: list[float] | None
    scan_pair: tuple[str, str] | None
    assessments_accepted: list[Gamble]
    assessments_rejected: list[Gamble]
    has_assessments: bool
    wealth: float | None


_TOP_KEYS = {"utility", "discount", "states", "schedule", "scan", "assessments", "wealth", "gamble"}

_UTILITY_KEYS = {
    "linear": set(),
    "log_shift": set(),
    "sqrt": set(),
    "power_discounted": {"alpha"},
    "composed": {"base", "phi"},
}

_PHI_KEYS = {
    "scale": {"c"},
    "power": {"p"},
    "poly": {"coeffs"},
    "table": {"x", "y"},
}

_DISCOUNT_KEYS = {
    "exponential": {"r"},
    "hyperbolic": {"k"},
    "quasi_hyperbolic": {"beta", "delta"},
    "generalized_hyperbolic": {"k", "p"},
    "scale_dependent": {"base", "eta"},
    "state_dependent": {"rates"},
    "hybrid": {"lambda", "d1", "d2"},
}

_ETA_KEYS = {
    "inverse_log": {"log_base"},
    "tabulated": {"x", "y"},
}


def _fail(tree: ConfigTree, path: tuple, message: str):
    line, col = tree.where(path)
    raise ConfigError(message, line, col)


def _check_keys(tree: ConfigTree, path: tuple, block: dict, allowed: set[str], what: str):
    for key in block:
        if key not in allowed:
            _fail(tree, path + (key,), f"unknown key {key!r} in {what}")


def _need(tree: ConfigTree, path: tuple, block: dict, key: str, what: str):
    if key not in block:
        _fail(tree, path, f"{what} needs key {key!r}")
    return block[key]


def _number(tree: ConfigTree, path: tuple, value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(tree, path, f"{what} must be a number, got {value!r}")
    return float(value)


def _build_utility(tree: ConfigTree, path: tuple, block) -> Utility:
    if not isinstance(block, dict):
        _fail(tree, path, "utility must be a block")
    kind = _need(tree, path, block, "kind", "utility")
    if kind not in _UTILITY_KEYS:
        _fail(tree, path + ("kind",), f"unknown utility kind {kind!r}")
    _check_keys(tree, path, block, _UTILITY_KEYS[kind] | {"kind"}, f"utility {kind!r}")
    try:
        if kind == "linear":
            return Linear()
        if kind == "log_shift":
            return LogShift()
        if kind == "sqrt":
            return Sqrt()
        if kind == "power_discounted":
            alpha = _number(tree, path + ("alpha",), _need(tree, path, block, "alpha", kind), "alpha")
            return PowerDiscounted(alpha)
        base = _build_utility(tree, path + ("base",), _need(tree, path, block, "base", kind))
        phi = _build_phi(tree, path + ("phi",), _need(tree, path, block, "phi", kind))
        return Composed(base, phi)
    except ValueError as exc:
        _fail(tree, path, str(exc))


def _build_phi(tree: ConfigTree, path: tuple, block):
    if not isinstance(block, dict):
        _fail(tree, path, "phi must be a block")
    form = _need(tree, path, block, "form", "phi")
    if form not in _PHI_KEYS:
        _fail(tree, path + ("form",), f"unknown phi form {form!r}")
    _check_keys(tree, path, block, _PHI_KEYS[form] | {"form"}, f"phi {form!r}")
    try:
        if form == "scale":
            return PhiScale(_number(tree, path + ("c",), _need(tree, path, block, "c", form), "c"))
        if form == "power":
            return PhiPower(_number(tree, path + ("p",), _need(tree, path, block, "p", form), "p"))
        if form == "poly":
            coeffs = _need(tree, path, block, "coeffs", form)
            if not isinstance(coeffs, list):
                _fail(tree, path + ("coeffs",), "coeffs must be a list of numbers")
            return PhiPoly(tuple(float(c) for c in coeffs))
        xs = _need(tree, path, block, "x", form)
        ys = _need(tree, path, block, "y", form)
        return PhiTable(tuple(xs), tuple(ys))
    except ValueError as exc:
        _fail(tree, path, str(exc))


def _build_discount(tree: ConfigTree, path: tuple, block) -> DiscountSpec:
    if not isinstance(block, dict):
        _fail(tree, path, "discount must be a block")
    kind = _need(tree, path, block, "kind", "discount")
    if kind not in _DISCOUNT_KEYS:
        _fail(tree, path + ("kind",), f"unknown discount kind {kind!r}")
    _check_keys(tree, path, block, _DISCOUNT_KEYS[kind] | {"kind"}, f"discount {kind!r}")

    def num(key):
        return _number(tree, path + (key,), _need(tree, path, block, key, kind), key)

    try:
        if kind == "exponential":
            return Exponential(num("r"))
        if kind == "hyperbolic":
            return Hyperbolic(num("k"))
        if kind == "quasi_hyperbolic":
            return QuasiHyperbolic(num("beta"), num("delta"))
        if kind == "generalized_hyperbolic":
            return GeneralizedHyperbolic(num("k"), num("p"))
        if kind == "scale_dependent":
            base = _build_discount(tree, path + ("base",), _need(tree, path, block, "base", kind))
            eta = _build_eta(tree, path + ("eta",), _need(tree, path, block, "eta", kind))
            return ScaleDependent(base, eta)
        if kind == "state_dependent":
            rates = _need(tree, path, block, "rates", kind)
            if not isinstance(rates, dict) or not rates:
                _fail(tree, path + ("rates",), "rates must be a nonempty block of state = rate")
            return StateDependent({k: _number(tree, path + ("rates", k), v, k) for k, v in rates.items()})
        lam = num("lambda")
        d1 = _build_discount(tree, path + ("d1",), _need(tree, path, block, "d1", kind))
        d2 = _build_discount(tree, path + ("d2",), _need(tree, path, block, "d2", kind))
        return Hybrid(lam, d1, d2)
    except ValueError as exc:
        _fail(tree, path, str(exc))


def _build_eta(tree: ConfigTree, path: tuple, block):
    if not isinstance(block, dict):
        _fail(tree, path, "eta must be a block")
    form = _need(tree, path, block, "form", "eta")
    if form not in _ETA_KEYS:
        _fail(tree, path + ("form",), f"unknown eta form {form!r}")
    _check_keys(tree, path, block, _ETA_KEYS[form] | {"form"}, f"eta {form!r}")
    try:
        if form == "inverse_log":
            base = block.get("log_base", 10)
            return InverseLog(_number(tree, path + ("log_base",), base, "log_base"))
        xs = _need(tree, path, block, "x", form)
        ys = _need(tree, path, block, "y", form)
        return TabulatedEta(tuple(xs), tuple(ys))
    except ValueError as exc:
        _fail(tree, path, str(exc))


def _build_gamble(
    tree: ConfigTree,
    path: tuple,
    block,
    states: StateSpace | None,
    default_wealth: float | None,
    named: dict[str, Gamble],
) -> Gamble:
    if isinstance(block, str):
        if block not in named:
            _fail(tree, path, f"unknown gamble name {block!r}")
        return named[block]
    if not isinstance(block, dict):
        _fail(tree, path, "gamble must be a block or a gamble name")
    _check_keys(tree, path, block, {"states", "rewards", "wealth"}, "gamble")
    rewards = _need(tree, path, block, "rewards", "gamble")
    if not isinstance(rewards, list) or not rewards:
        _fail(tree, path + ("rewards",), "rewards must be a nonempty list of numbers")
    space = states
    if "states" in block:
        labels = block["states"]
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            _fail(tree, path + ("states",), "states must be a list of labels")
        space = StateSpace(tuple(labels))
        if states is not None and space != states:
            _fail(tree, path + ("states",), "gamble states differ from the states block")
    if space is None:
        _fail(tree, path, "gamble needs states (inline or via a states block)")
    wealth = block.get("wealth", default_wealth)
    try:
        return Gamble(
            space,
            [_number(tree, path + ("rewards", i), r, "reward") for i, r in enumerate(rewards)],
            wealth_floor=None if wealth is None else float(wealth),
        )
    except ValueError as exc:
        _fail(tree, path, str(exc))


def build_scenario(tree: ConfigTree) -> Scenario:
    """Validate the tree and construct every component; unknown keys are hard errors."""
    data = tree.data
    for key in data:
        if key not in _TOP_KEYS:
            _fail(tree, (key,), f"unknown top-level key {key!r}")

    utility = Linear()
    if "utility" in data:
        utility = _build_utility(tree, ("utility",), data["utility"])

    discount = None
    if "discount" in data:
        discount = _build_discount(tree, ("discount",), data["discount"])

    states = None
    if "states" in data:
        block = data["states"]
        if not isinstance(block, dict):
            _fail(tree, ("states",), "states must be a block")
        _check_keys(tree, ("states",), block, {"labels"}, "states")
        labels = _need(tree, ("states",), block, "labels", "states")
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            _fail(tree, ("states", "labels"), "labels must be a list of strings")
        try:
            states = StateSpace(tuple(labels))
        except ValueError as exc:
            _fail(tree, ("states",), str(exc))

    wealth = None
    if "wealth" in data:
        wealth = _number(tree, ("wealth",), data["wealth"], "wealth")

    named_gambles: dict[str, Gamble] = {}
    if "gamble" in data:
        if "gamble" in tree.labeled:
            for name, block in data["gamble"].items():
                named_gambles[name] = _build_gamble(
                    tree, ("gamble", name), block, states, wealth, {}
                )
        else:
            # A single anonymous gamble block is valid and validated.
            _build_gamble(tree, ("gamble",), data["gamble"], states, wealth, {})

    schedules: dict[str, PaymentSchedule] = {}
    if "schedule" in data:
        if "schedule" not in tree.labeled:
            _fail(tree, ("schedule",), 'schedules need a name: schedule "A" { ... }')
        for name, block in data["schedule"].items():
            path = ("schedule", name)
            _check_keys(tree, path, block, {"pay"}, f"schedule {name!r}")
            pay = _need(tree, path, block, "pay", f"schedule {name!r}")
            if not isinstance(pay, list) or not pay:
                _fail(tree, path + ("pay",), "pay must show a nonempty list of payments")
            payments = []
            for i, entry in enumerate(pay):
                epath = path + ("pay", i)
                if not isinstance(entry, dict):
                    _fail(tree, epath, "each payment is a block {amount = ..., t = ...}")
                _check_keys(tree, epath, entry, {"amount", "t", "state"}, "payment")
                amount = _number(tree, epath, _need(tree, epath, entry, "amount", "payment"), "amount")
                t = _number(tree, epath, _need(tree, epath, entry, "t", "payment"), "t")
                state = entry.get("state")
                if state is not None and not isinstance(state, str):
                    _fail(tree, epath + ("state",), "state must be a label string")
                try:
                    payments.append(DatedPayment(amount, t, state))
                except ValueError as exc:
                    _fail(tree, epath, str(exc))
            schedules[name] = PaymentSchedule(tuple(payments), label=name)

    scan_shifts = None
    scan_pair = None
    if "scan" in data:
        block = data["scan"]
        if not isinstance(block, dict):
            _fail(tree, ("scan",), "scan must be a block")
        _check_keys(tree, ("scan",), block, {"shifts", "a", "b"}, "scan")
        shifts = _need(tree, ("scan",), block, "shifts", "scan")
        if not isinstance(shifts, list) or not shifts:
            _fail(tree, ("scan", "shifts"), "shifts must be a nonempty list of numbers")
        scan_shifts = [
            _number(tree, ("scan", "shifts", i), v, "shift") for i, v in enumerate(shifts)
        ]
        names = list(schedules)
        a = block.get("a", names[0] if len(names) >= 1 else None)
        b = block.get("b", names[1] if len(names) >= 2 else None)
        for side, val in (("a", a), ("b", b)):
            if val is None or val not in schedules:
                _fail(tree, ("scan",), f"scan side {side!r} needs an existing schedule name")
        scan_pair = (a, b)

    accepted: list[Gamble] = []
    rejected: list[Gamble] = []
    has_assessments = False
    if "assessments" in data:
        has_assessments = True
        block = data["assessments"]
        if not isinstance(block, dict):
            _fail(tree, ("assessments",), "assessments must be a block")
        _check_keys(tree, ("assessments",), block, {"accepted", "rejected", "wealth"}, "assessments")
        aw = block.get("wealth", wealth)
        aw = None if aw is None else _number(tree, ("assessments", "wealth"), aw, "wealth")
        entries = _need(tree, ("assessments",), block, "accepted", "assessments")
        if not isinstance(entries, list):
            _fail(tree, ("assessments", "accepted"), "accepted must be a list")
        for i, entry in enumerate(entries):
            accepted.append(
                _build_gamble(tree, ("assessments", "accepted", i), entry, states, aw, named_gambles)
            )
        for i, entry in enumerate(block.get("rejected", [])):
            rejected.append(
                _build_gamble(tree, ("assessments", "rejected", i), entry, states, aw, named_gambles)
            )

    return Scenario(
        utility=utility,
        discount=discount,
        states=states,
        schedules=schedules,
        scan_shifts=scan_shifts,
        scan_pair=scan_pair,
        assessments_accepted=accepted,
        assessments_rejected=rejected,
        has_assessments=has_assessments,
        wealth=wealth,
    )
