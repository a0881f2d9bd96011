"""
Text and JSON input formats.

Grammar (full EBNF in docs/grammar.md):

    document = [ "conductor" "=" integer ";" ] expr
    expr     = [ sign ] term { sign term }
    term     = factor { "*" factor }
    factor   = atom [ "^" [ "-" ] integer ]
    atom     = integer [ "/" integer ] | "q" | "z" | "x" | "y" | "(" expr ")"

Polynomial text is evaluated in the quantum plane, so "y*x" reads as q·xy.
"""

import json
import re
from fractions import Fraction
from typing import Any, List, Optional, Tuple, Union

from .errors import ParseError, QPIError
from .models import Character
from .qplane import Derivation, QPoly, make_derivation, make_derivation_from_images
from .scalar import QSpec, Scalar

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>conductor|[qzxy])|(?P<op>[-+*/^()=;]))")

Value = Union[Scalar, QPoly]


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos} in {text!r}")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive-descent evaluator over Scalar (allow_xy=False) or QPoly values."""

    def __init__(self, text: str, spec: QSpec, allow_xy: bool, conductor: int = 1):
        self.text = text
        self.spec = spec
        self.allow_xy = allow_xy
        self.conductor = conductor
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, value: Optional[str] = None) -> Tuple[str, str]:
        token = self._peek()
        if token is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        if value is not None and token[1] != value:
            raise ParseError(f"expected {value!r} but found {token[1]!r} in {self.text!r}")
        self.pos += 1
        return token

    def _integer(self) -> int:
        kind, value = self._take()
        if kind != 'int':
            raise ParseError(f"expected an integer but found {value!r} in {self.text!r}")
        return int(value)

    def _lift(self, value) -> Value:
        if isinstance(value, (int, Fraction)):
            value = Scalar.rational(value, self.spec)
        if self.allow_xy and isinstance(value, Scalar):
            return QPoly.constant(value, self.spec)
        return value

    def parse(self) -> Value:
        token = self._peek()
        if token == ('word', 'conductor'):
            self._take()
            self._take('=')
            self.conductor = self._integer()
            if self.conductor < 1:
                raise ParseError("conductor must be positive")
            self._take(';')
        if self._peek() is None:
            raise ParseError(f"empty expression in {self.text!r}")
        value = self._expr()
        if self._peek() is not None:
            raise ParseError(f"trailing input {self._peek()[1]!r} in {self.text!r}")
        return value

    def _expr(self) -> Value:
        negate = False
        if self._peek() in (('op', '+'), ('op', '-')):
            negate = self._take()[1] == '-'
        value = self._term()
        if negate:
            value = -value
        while self._peek() in (('op', '+'), ('op', '-')):
            sign = self._take()[1]
            rhs = self._term()
            value = value + rhs if sign == '+' else value - rhs
        return value

    def _term(self) -> Value:
        value = self._factor()
        while self._peek() == ('op', '*'):
            self._take()
            value = value * self._factor()
        return value

    def _factor(self) -> Value:
        value = self._atom()
        if self._peek() == ('op', '^'):
            self._take()
            negative = False
            if self._peek() == ('op', '-'):
                self._take()
                negative = True
            exponent = self._integer()
            value = self._power(value, -exponent if negative else exponent)
        return value

    def _power(self, value: Value, exponent: int) -> Value:
        if exponent >= 0:
            return value ** exponent
        if isinstance(value, QPoly):
            if not value.is_constant():
                raise ParseError(f"negative powers of x or y are not allowed in {self.text!r}")
            return QPoly.constant(value.coefficient(0, 0) ** exponent, self.spec)
        return value ** exponent

    def _atom(self) -> Value:
        kind, value = self._take()
        if kind == 'int':
            number = Fraction(int(value))
            if self._peek() == ('op', '/'):
                self._take()
                denominator = self._integer()
                if denominator == 0:
                    raise ParseError(f"zero denominator in {self.text!r}")
                number = number / denominator
            return self._lift(number)
        if value == '(':
            inner = self._expr()
            self._take(')')
            return inner
        if value == 'q':
            return self._lift(Scalar.q(self.spec))
        if value == 'z':
            if self.conductor == 1:
                raise ParseError(f"'z' needs a 'conductor=L;' declaration in {self.text!r}")
            return self._lift(Scalar.zeta(self.conductor, 1, self.spec))
        if value in ('x', 'y'):
            if not self.allow_xy:
                raise ParseError(f"{value!r} is not allowed in a scalar: {self.text!r}")
            return QPoly.x(self.spec) if value == 'x' else QPoly.y(self.spec)
        raise ParseError(f"unexpected {value!r} in {self.text!r}")


def _evaluate(text: str, spec: QSpec, allow_xy: bool, conductor: int) -> Value:
    try:
        return _Parser(text, spec, allow_xy, conductor).parse()
    except QPIError:
        raise
    except (ArithmeticError, ValueError) as e:
        raise ParseError(f"cannot evaluate {text!r}: {e}") from e


def parse_scalar(text: str, spec: QSpec, conductor: int = 1) -> Scalar:
    """
    Parse the scalar text form, e.g. 'conductor=12; 1/2*q^-1*z^3 + 2'.

    Raises:
        ParseError: on malformed text or if x, y appear
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("scalar text cannot be empty")
    return _evaluate(text, spec, False, conductor)


def parse_poly(text: str, spec: QSpec, conductor: int = 1) -> QPoly:
    """
    Parse and evaluate polynomial text, e.g. 'x^3*y + x^2*y^2'.

    Raises:
        ParseError: on malformed text
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("polynomial text cannot be empty")
    return _evaluate(text, spec, True, conductor)


def poly_from_json(records: Any, spec: QSpec) -> QPoly:
    """
    Build a QPoly from [{i, j, coeff}] records (coeff: number or scalar text).

    Raises:
        ParseError: on malformed records
    """
    if isinstance(records, str):
        return parse_poly(records, spec)
    if not isinstance(records, list):
        raise ParseError(f"a polynomial must be a term list or text, got {type(records).__name__}")
    result = QPoly.zero(spec)
    for record in records:
        if not isinstance(record, dict) or not {'i', 'j'} <= set(record):
            raise ParseError(f"term records need keys i, j, coeff; got {record!r}")
        i, j = record['i'], record['j']
        if isinstance(i, bool) or isinstance(j, bool) or not isinstance(i, int) or not isinstance(j, int) or i < 0 or j < 0:
            raise ParseError(f"term exponents must be nonnegative integers, got {record!r}")
        coeff = record.get('coeff', 1)
        if isinstance(coeff, str):
            scalar = parse_scalar(coeff, spec)
        elif isinstance(coeff, (int, Fraction)) and not isinstance(coeff, bool):
            scalar = Scalar.rational(coeff, spec)
        else:
            raise ParseError(f"coefficient must be an integer or scalar text, got {coeff!r}")
        result = result + QPoly.monomial(i, j, spec, scalar)
    return result


def parse_qspec(tokens: Union[str, List[str], dict]) -> QSpec:
    """
    Parse 'transcendental', 'root N', 'root:N' (or ['root', 'N']) or a JSON q object.

    Raises:
        ParseError: on unknown forms
    """
    if isinstance(tokens, dict):
        try:
            return QSpec.from_dict(tokens)
        except (KeyError, ValueError, TypeError) as e:
            raise ParseError(f"malformed q specification {tokens!r}") from e
    if isinstance(tokens, str):
        tokens = re.split(r'[\s:]+', tokens.strip())
    tokens = [t.lower() for t in tokens]
    if tokens == ['transcendental']:
        return QSpec.transcendental()
    if len(tokens) == 2 and tokens[0] in ('root', 'root_of_unity'):
        try:
            order = int(tokens[1])
        except ValueError as e:
            raise ParseError(f"root-of-unity order must be an integer, got {tokens[1]!r}") from e
        return QSpec.root_of_unity(order)
    raise ParseError(f"q must be 'transcendental' or 'root N', got {' '.join(tokens)!r}")


def parse_characters(data: Any) -> List[Character]:
    """
    Parse a JSON list of [m, n] pairs (a JSON string is decoded first).

    Raises:
        ParseError: on malformed input
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"character list is not valid JSON: {e}") from e
    if not isinstance(data, list):
        raise ParseError("a constraint system must be a JSON list of [m, n] pairs")
    return [Character.from_list(item) for item in data]


def derivation_from_document(document: dict) -> Tuple[QSpec, Derivation]:
    """
    Read an isotropy input document.

    Accepted shapes: {"q": ..., "w": ..., "a": ..., "b": ...} or
    {"q": ..., "dx": ..., "dy": ...}.

    Raises:
        ParseError: on malformed documents
        NotADerivation: if dx, dy violate the defining relation
    """
    if not isinstance(document, dict):
        raise ParseError("an isotropy document must be a JSON object")
    spec = parse_qspec(document.get('q', {'type': 'transcendental'}))
    has_inner = 'w' in document
    has_images = 'dx' in document or 'dy' in document
    if has_inner == has_images:
        raise ParseError("give either w (with optional a, b) or dx and dy")
    if has_inner:
        w = poly_from_json(document['w'], spec)
        a = _scalar_field(document.get('a', 0), spec)
        b = _scalar_field(document.get('b', 0), spec)
        return spec, make_derivation(w, a, b, spec)
    dx = poly_from_json(document.get('dx', []), spec)
    dy = poly_from_json(document.get('dy', []), spec)
    return spec, make_derivation_from_images(dx, dy, spec)


def _scalar_field(value: Any, spec: QSpec) -> Scalar:
    if isinstance(value, str):
        return parse_scalar(value, spec)
    if isinstance(value, int) and not isinstance(value, bool):
        return Scalar.rational(value, spec)
    raise ParseError(f"a, b must be scalar text or integers, got {value!r}")


def load_document(source: str) -> Any:
    """
    Load JSON from inline text or from a file path.

    Raises:
        ParseError: if the text is not valid JSON or the file cannot be read
    """
    text = source
    if not source.lstrip().startswith(('{', '[')):
        try:
            with open(source, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise ParseError(f"cannot read input {source!r}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"input is not valid JSON: {e}") from e
