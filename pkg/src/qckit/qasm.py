"""Reader and writer for a small subset of OpenQASM 2.0.

Accepted grammar::

    program := "OPENQASM 2.0;" include? decl+ stmt*
    include := 'include "qelib1.inc";'                  (ignored)
    decl    := "qreg q[" INT "];" | "creg c[" INT "];"
    stmt    := GATE args ";"
             | "measure q[" INT "] -> c[" INT "];"     (trailing only)
             | "barrier" ... ";"                         (ignored)
    GATE    := id|x|y|z|h|s|sdg|t|tdg|cx|p(expr)|rz(expr)|ry(expr)|rx(expr)
    args    := "q[" INT "]" ("," "q[" INT "]")?

Angle expressions allow real literals, ``pi``, unary minus, parentheses and
``+ - * /`` with the usual precedence. ``//`` starts a comment.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .circuit import MAX_QUBITS, Circuit, GateApplication
from .errors import (
    QasmCapacityError,
    QasmIndexError,
    QasmLexError,
    QasmSyntaxError,
    QasmUndeclaredRegisterError,
    QasmUnknownGateError,
)
from .gates import REGISTRY

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
# tight enough that the symbolic text parses back to the same angle within 1e-15
PI_FRACTION_TOL = 1e-15


@dataclass(frozen=True)
class Token:
    kind: str  # ident | number | string | sym | eof
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<newline>\n)
  | (?P<ws>[ \t\r\f]+)
  | (?P<comment>//[^\n]*)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<sym>->|[;,\[\]()+\-*/])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            if text[pos] == '"':
                raise QasmLexError("unterminated string", line, col)
            raise QasmLexError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "newline":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.num_qubits: int | None = None
        self.num_clbits: int | None = None
        self.ops: list[GateApplication] = []
        self.measured = False

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None, cls=QasmSyntaxError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.column)

    def expect(self, text: str, what: str | None = None) -> Token:
        if self.tok.text != text or self.tok.kind in ("string", "eof"):
            raise self.error(f"expected {what or repr(text)}, found {_describe(self.tok)}")
        return self.advance()

    def expect_int(self) -> tuple[int, Token]:
        tok = self.tok
        if tok.kind != "number" or not tok.text.isdigit():
            raise self.error(f"expected an integer, found {_describe(tok)}")
        self.advance()
        return int(tok.text), tok

    # grammar

    def program(self) -> Circuit:
        self.expect("OPENQASM", "'OPENQASM 2.0;' header")
        if self.tok.text != "2.0":
            raise self.error(f"unsupported version {_describe(self.tok)}, expected 2.0")
        self.advance()
        self.expect(";")
        if self.tok.text == "include":
            self.include()
        if self.tok.text not in ("qreg", "creg"):
            raise self.error(f"expected register declaration, found {_describe(self.tok)}")
        first_decl = self.tok
        while self.tok.text in ("qreg", "creg"):
            self.declaration()
        if self.num_qubits is None:
            raise self.error("no quantum register 'q' declared", first_decl, QasmUndeclaredRegisterError)
        while self.tok.kind != "eof":
            self.statement()
        return Circuit(self.num_qubits, tuple(self.ops), self.num_clbits or 0)

    def include(self):
        self.advance()
        tok = self.tok
        if tok.kind != "string":
            raise self.error(f"expected a file name string, found {_describe(tok)}")
        if tok.text != '"qelib1.inc"':
            raise self.error(f"only qelib1.inc may be included, found {tok.text}")
        self.advance()
        self.expect(";")

    def declaration(self):
        kw = self.advance()
        quantum = kw.text == "qreg"
        expected = "q" if quantum else "c"
        name = self.tok
        if name.kind != "ident":
            raise self.error(f"expected register name, found {_describe(name)}")
        if name.text != expected:
            raise self.error(f"{kw.text} must be named '{expected}', found {name.text!r}")
        self.advance()
        if (self.num_qubits if quantum else self.num_clbits) is not None:
            raise self.error(f"register '{expected}' declared twice", name)
        self.expect("[")
        size, size_tok = self.expect_int()
        self.expect("]")
        self.expect(";")
        if quantum:
            if size < 1:
                raise self.error("quantum register must have at least one qubit", size_tok)
            if size > MAX_QUBITS:
                raise self.error(
                    f"register of {size} qubits exceeds the limit of {MAX_QUBITS}",
                    size_tok, QasmCapacityError,
                )
            self.num_qubits = size
        else:
            self.num_clbits = size

    def statement(self):
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected a statement, found {_describe(tok)}")
        if tok.text == "barrier":
            self.barrier()
        elif tok.text == "measure":
            self.measure()
        elif tok.text in ("qreg", "creg"):
            raise self.error("register declarations must precede statements")
        elif tok.text in REGISTRY:
            self.gate()
        else:
            raise QasmUnknownGateError(tok.text, tok.line, tok.column)

    def barrier(self):
        self.advance()
        while self.tok.text != ";":
            if self.tok.kind == "eof":
                raise self.error("expected ';' to end barrier, found end of input")
            self.advance()
        self.advance()

    def qubit_operand(self) -> tuple[int, Token]:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected a qubit operand, found {_describe(tok)}")
        if tok.text != "q":
            raise self.error(f"undeclared quantum register {tok.text!r}", tok, QasmUndeclaredRegisterError)
        self.advance()
        self.expect("[", "'[' (whole-register operands are not supported)")
        index, index_tok = self.expect_int()
        self.expect("]")
        if index >= self.num_qubits:
            raise self.error(
                f"qubit index {index} out of range for q[{self.num_qubits}]", index_tok, QasmIndexError
            )
        return index, tok

    def measure(self):
        self.advance()
        qubit, _ = self.qubit_operand()
        self.expect("->")
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected a classical bit, found {_describe(tok)}")
        if tok.text != "c" or self.num_clbits is None:
            raise self.error(f"undeclared classical register {tok.text!r}", tok, QasmUndeclaredRegisterError)
        self.advance()
        self.expect("[")
        clbit, clbit_tok = self.expect_int()
        self.expect("]")
        self.expect(";")
        if clbit >= self.num_clbits:
            raise self.error(
                f"classical bit {clbit} out of range for c[{self.num_clbits}]", clbit_tok, QasmIndexError
            )
        self.ops.append(GateApplication.measure(qubit, clbit))
        self.measured = True

    def gate(self):
        name_tok = self.advance()
        spec = REGISTRY[name_tok.text]
        if self.measured:
            raise self.error("gates may not follow a measurement", name_tok)
        params: tuple[float, ...] = ()
        if spec.param_count:
            self.expect("(", f"'(' with the angle of {spec.name}")
            params = (self.expr(),)
            self.expect(")")
        elif self.tok.text == "(":
            raise self.error(f"gate {spec.name!r} takes no parameters")
        qubits = []
        for i in range(spec.arity):
            if i:
                self.expect(",", f"',' and a second operand for {spec.name}")
            q, q_tok = self.qubit_operand()
            if q in qubits:
                raise self.error(f"qubit q[{q}] used twice in {spec.name}", q_tok)
            qubits.append(q)
        if self.tok.text == ",":
            raise self.error(f"gate {spec.name!r} takes {spec.arity} operand(s)")
        self.expect(";")
        self.ops.append(GateApplication(spec.name, tuple(qubits), params))

    # angle expressions

    def expr(self) -> float:
        start = self.tok
        value = self.sum()
        if not math.isfinite(value):
            raise self.error("angle expression is not finite", start)
        return value

    def sum(self) -> float:
        value = self.product()
        while self.tok.text in ("+", "-") and self.tok.kind == "sym":
            op = self.advance().text
            rhs = self.product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def product(self) -> float:
        value = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "sym":
            op_tok = self.advance()
            rhs = self.unary()
            if op_tok.text == "*":
                value *= rhs
            elif rhs == 0:
                raise self.error("division by zero", op_tok)
            else:
                value /= rhs
        return value

    def unary(self) -> float:
        if self.tok.text == "-" and self.tok.kind == "sym":
            self.advance()
            return -self.unary()
        return self.primary()

    def primary(self) -> float:
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return float(tok.text)
        if tok.kind == "ident":
            if tok.text != "pi":
                raise self.error(f"unknown identifier {tok.text!r} in expression")
            self.advance()
            return math.pi
        if tok.text == "(":
            self.advance()
            value = self.sum()
            self.expect(")")
            return value
        raise self.error(f"expected a number, 'pi' or '(', found {_describe(tok)}")


def parse_qasm(text: str) -> Circuit:
    """Parse program text into a :class:`Circuit`, preserving statement order.

    Raises a :class:`~qckit.errors.QasmError` subclass carrying the line and
    column of the offending token.
    """
    return _Parser(text).program()


def format_angle(x: float) -> str:
    """Canonical angle text: ``k*pi/4`` forms when close enough, else 17 digits."""
    k = round(x / (math.pi / 4))
    if abs(x - k * math.pi / 4) <= PI_FRACTION_TOL:
        if k == 0:
            return "0"
        g = math.gcd(k, 4)
        num, den = k // g, 4 // g
        sign = "-" if num < 0 else ""
        num = abs(num)
        s = sign + ("pi" if num == 1 else f"{num}*pi")
        return s if den == 1 else f"{s}/{den}"
    return format(x, ".17g")


def format_op(op: GateApplication) -> str:
    if op.is_measurement:
        return f"measure q[{op.qubits[0]}] -> c[{op.clbit}];"
    head = op.gate
    if op.params:
        head += "(" + ",".join(format_angle(p) for p in op.params) + ")"
    return head + " " + ",".join(f"q[{q}]" for q in op.qubits) + ";"


def emit_qasm(c: Circuit) -> str:
    lines = [HEADER.rstrip("\n"), f"qreg q[{c.num_qubits}];"]
    if c.num_clbits:
        lines.append(f"creg c[{c.num_clbits}];")
    lines.extend(format_op(op) for op in c.ops)
    return "\n".join(lines) + "\n"
