"""Parser and emitter for the composer's QASM dialect.

Accepted grammar (a strict subset of OpenQASM 2.0):

    program   := header? include? decl* stmt*
    header    := "OPENQASM" REAL ";"
    include   := "include" STRING ";"        (ignored)
    decl      := "qreg" ID "[" INT "]" ";" | "creg" ID "[" INT "]" ";"
    stmt      := GATE ID "[" INT "]" ";"
               | "u1" "(" expr ")" ref ";" | "u2" "(" expr "," expr ")" ref ";"
               | "u3" "(" expr "," expr "," expr ")" ref ";"
               | "cx" ref "," ref ";"
               | "measure" ref "->" ref ";"
    expr      := "-"? (REAL | "pi" ("/" REAL)? | REAL "*" "pi" ("/" REAL)?)
    ref       := ID "[" INT "]"

Exactly one qreg and one creg declaration are required. "//" comments run
to end of line; whitespace is insignificant. Emission writes, in order:
header, include, qreg, creg, gate statements, measure statements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from qxemu.circuit import Circuit, GateOp
from qxemu.gates import GATE_NAMES, PARAM_COUNT, GateSpec


class QasmError(ValueError):
    """Lexical, syntax, or semantic error with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class _Token:
    kind: str  # id | int | real | string | symbol | eof
    text: str
    line: int
    column: int


_SYMBOLS = ("->", "(", ")", "[", "]", "{", "}", ",", ";", "*", "/", "-")


def _tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise QasmError("unterminated string", start_line, start_col)
            tokens.append(_Token("string", text[i + 1 : j], start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                seen_dot = seen_dot or text[j] == "."
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
                    seen_dot = True  # exponent form is a real
            lexeme = text[i:j]
            kind = "real" if seen_dot else "int"
            tokens.append(_Token(kind, lexeme, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("id", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        matched = None
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                matched = sym
                break
        if matched is None:
            raise QasmError(f"unexpected character {ch!r}", start_line, start_col)
        tokens.append(_Token("symbol", matched, start_line, start_col))
        col += len(matched)
        i += len(matched)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise QasmError(message, tok.line, tok.column)

    def expect_symbol(self, sym: str) -> _Token:
        tok = self.next()
        if tok.kind != "symbol" or tok.text != sym:
            self.fail(f"expected {sym!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def expect_int(self) -> int:
        tok = self.next()
        if tok.kind != "int":
            self.fail(f"expected an integer, found {tok.text or 'end of input'!r}", tok)
        return int(tok.text)

    def number(self) -> float:
        tok = self.next()
        if tok.kind not in ("int", "real"):
            self.fail(f"expected a number, found {tok.text or 'end of input'!r}", tok)
        return float(tok.text)

    def angle(self) -> float:
        # expr := "-"? (number ("*" pi ("/" number)?)? | pi ("/" number)?)
        sign = 1.0
        if self.peek().kind == "symbol" and self.peek().text == "-":
            self.next()
            sign = -1.0
        tok = self.peek()
        if tok.kind == "id" and tok.text == "pi":
            self.next()
            value = math.pi
            if self.peek().kind == "symbol" and self.peek().text == "/":
                self.next()
                value = math.pi / self.number()
            return sign * value
        value = self.number()
        if self.peek().kind == "symbol" and self.peek().text == "*":
            self.next()
            tok = self.next()
            if not (tok.kind == "id" and tok.text == "pi"):
                self.fail("expected 'pi' after '*'", tok)
            value = value * math.pi
            if self.peek().kind == "symbol" and self.peek().text == "/":
                self.next()
                value = value / self.number()
        return sign * value

    def register_ref(self, declared: dict) -> tuple:
        tok = self.next()
        if tok.kind != "id":
            self.fail("expected a register name", tok)
        if tok.text not in declared:
            self.fail(f"undeclared register {tok.text!r}", tok)
        self.expect_symbol("[")
        idx_tok = self.peek()
        index = self.expect_int()
        if index >= declared[tok.text]:
            raise QasmError(
                f"index {index} out of range for {tok.text}[{declared[tok.text]}]",
                idx_tok.line,
                idx_tok.column,
            )
        self.expect_symbol("]")
        return tok.text, index


def parse(text: str) -> Circuit:
    """Parse QASM source into a Circuit."""
    p = _Parser(text)

    # optional version header
    tok = p.peek()
    if tok.kind == "id" and tok.text == "OPENQASM":
        p.next()
        p.number()
        p.expect_symbol(";")
    # optional include, ignored
    tok = p.peek()
    if tok.kind == "id" and tok.text == "include":
        p.next()
        inc = p.next()
        if inc.kind != "string":
            p.fail("expected a quoted filename after include", inc)
        p.expect_symbol(";")

    qreg: tuple | None = None  # (name, size)
    creg: tuple | None = None
    ops: list = []
    measurements: list = []
    measured: set = set()

    def declared_q() -> dict:
        if qreg is None:
            p.fail("no qreg declared")
        return {qreg[0]: qreg[1]}

    def declared_c() -> dict:
        if creg is None:
            p.fail("no creg declared")
        return {creg[0]: creg[1]}

    while True:
        tok = p.peek()
        if tok.kind == "eof":
            break
        if tok.kind != "id":
            p.fail(f"expected a statement, found {tok.text!r}", tok)
        keyword = tok.text
        if keyword in ("qreg", "creg"):
            p.next()
            name_tok = p.next()
            if name_tok.kind != "id":
                p.fail("expected a register name", name_tok)
            p.expect_symbol("[")
            size = p.expect_int()
            p.expect_symbol("]")
            p.expect_symbol(";")
            if keyword == "qreg" and size < 1:
                p.fail("register size must be >= 1", name_tok)
            if keyword == "qreg":
                if qreg is not None:
                    p.fail("duplicate qreg declaration", tok)
                qreg = (name_tok.text, size)
            else:
                if creg is not None:
                    p.fail("duplicate creg declaration", tok)
                creg = (name_tok.text, size)
            continue
        if keyword == "measure":
            p.next()
            _, q = p.register_ref(declared_q())
            p.expect_symbol("->")
            _, c = p.register_ref(declared_c())
            p.expect_symbol(";")
            if q in measured:
                p.fail(f"qubit {q} measured twice", tok)
            if any(c == c2 for _, c2 in measurements):
                p.fail(f"clbit {c} written by two measurements", tok)
            measured.add(q)
            measurements.append((q, c))
            continue
        if keyword not in GATE_NAMES:
            p.fail(f"unknown gate {keyword!r}", tok)
        p.next()
        params = ()
        if PARAM_COUNT[keyword] > 0:
            p.expect_symbol("(")
            angles = [p.angle()]
            for _ in range(PARAM_COUNT[keyword] - 1):
                p.expect_symbol(",")
                angles.append(p.angle())
            p.expect_symbol(")")
            params = tuple(angles)
        _, q0 = p.register_ref(declared_q())
        if keyword == "cx":
            p.expect_symbol(",")
            _, q1 = p.register_ref(declared_q())
            qubits = (q0, q1)
        else:
            qubits = (q0,)
        p.expect_symbol(";")
        for q in qubits:
            if q in measured:
                p.fail(f"gate on qubit {q} after its measurement", tok)
        try:
            ops.append(GateOp(GateSpec(keyword, params), qubits))
        except ValueError as exc:
            p.fail(str(exc), tok)

    if qreg is None:
        raise QasmError("missing qreg declaration", 1, 1)
    if creg is None:
        raise QasmError("missing creg declaration", 1, 1)
    return Circuit(qreg[1], creg[1], tuple(ops), tuple(measurements))


def _format_angle(x: float) -> str:
    """Render an angle: exact pi-fractions where possible, else full repr.

    Both forms re-parse to the identical float, so parse(emit(c)) == c.
    """
    if x == 0.0:
        return "0"
    for m in range(1, 13):
        for k in range(-24, 25):
            if k != 0 and x == k * math.pi / m:
                if k == 1:
                    return "pi" if m == 1 else f"pi/{m}"
                if k == -1:
                    return "-pi" if m == 1 else f"-pi/{m}"
                return f"{k}*pi/{m}" if m > 1 else f"{k}*pi"
    return repr(x)


def emit(circuit: Circuit) -> str:
    """Emit QASM text for a circuit. parse(emit(c)) is op-for-op identical to c."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.n_qubits}];",
        f"creg c[{circuit.n_clbits}];",
    ]
    for op in circuit.ops:
        name = op.spec.name
        if op.spec.params:
            name += "(" + ",".join(_format_angle(a) for a in op.spec.params) + ")"
        refs = ",".join(f"q[{q}]" for q in op.qubits)
        lines.append(f"{name} {refs};")
    for q, c in circuit.measurements:
        lines.append(f"measure q[{q}] -> c[{c}];")
    return "\n".join(lines) + "\n"
