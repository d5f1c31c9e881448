"""Literal grammars and the experiment config loader.

Scalars      1/5 | -3 | sqrt(2) | 1/2 + 1/3*sqrt(3)
Elements     2*u^1 v^-1 - (0.5+1j)*w z^-1 + 3        letters in the order u v w z
Observables  s1 t0^-1 + 0.5*s2 | e                     s-letters s1.., t-letters t0, t-3, ...
Cycles       1,2; 3,4,5 | increasing:3
S2 rules     shift | identity | cycles:L
"""

import configparser
import re
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, NoReturn, Optional, Tuple, TypeVar

from models.action_spec import GroupKind
from models.dual_system import Cycles, DualSystemConfig, S2Rule, increasing_cycles
from models.experiment import (
    ExperimentConfig,
    FolnerSection,
    SystemKind,
    SystemSection,
)
from models.folner_region import RegionShape
from models.group_observable import GroupObservable
from models.state_functional import FunctionalKind
from models.surd import ParameterError, SurdScalar, is_square_free
from models.tensor_element import TensorElement, TensorMonomial
from models.torus_element import TorusElement
from models.word import Family, Letter, Word

T = TypeVar("T")

_INT = re.compile(r"\d+")
_SIGNED_INT = re.compile(r"[+-]?\d+")
_SIGN = re.compile(r"[+-]")
_NUMBER = re.compile(r"\d+/\d+|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?j?")
_PAREN_COMPLEX = re.compile(r"\(([^()]*)\)")
_TORUS_LETTER = re.compile(r"[uvwz]")
_WORD_LETTER = re.compile(r"([st])(-?\d+)(?:\^(-?1))?")
_IDENTITY_WORD = re.compile(r"e\b")

_LETTER_ORDER = "uvwz"


class _Scanner:
    """Cursor over one literal, reporting errors at their 1-based position."""

    def __init__(self, text: str, line: int = 1, column: int = 1):
        self.text = text
        self.pos = 0
        self.line = line
        self.column = column

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def match(self, pattern: "re.Pattern[str]", skip: bool = True) -> Optional["re.Match[str]"]:
        if skip:
            self.skip_ws()
        found = pattern.match(self.text, self.pos)
        if found:
            self.pos = found.end()
        return found

    def literal(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.literal(token):
            self.fail(f"expected '{token}'")

    def fail(self, message: str, pos: Optional[int] = None) -> NoReturn:
        pos = self.pos if pos is None else pos
        if pos >= len(self.text):
            message = f"{message} at end of '{self.text}'"
        raise ConfigParseError(message, self.line, self.column + pos)

    def finish(self) -> None:
        if not self.at_end():
            self.fail(f"unexpected '{self.text[self.pos]}'")


# -- scalars --------------------------------------------------------------------


def _scalar_term(scanner: _Scanner) -> SurdScalar:
    if scanner.literal("sqrt"):
        return _sqrt_tail(scanner)
    start = scanner.pos
    numerator = scanner.match(_INT)
    if numerator is None:
        scanner.fail("expected an integer or sqrt(n)")
    value = Fraction(int(numerator.group()))
    if scanner.literal("/"):
        denominator = scanner.match(_INT)
        if denominator is None:
            scanner.fail("expected a denominator")
        if int(denominator.group()) == 0:
            scanner.fail("zero denominator", start)
        value /= int(denominator.group())
    if scanner.literal("*"):
        scanner.expect("sqrt")
        return _sqrt_tail(scanner) * value
    return SurdScalar(value)


def _sqrt_tail(scanner: _Scanner) -> SurdScalar:
    scanner.expect("(")
    scanner.skip_ws()
    start = scanner.pos
    radicand = scanner.match(_INT)
    if radicand is None:
        scanner.fail("expected a radicand")
    n = int(radicand.group())
    if not is_square_free(n):
        scanner.fail(f"radicand {n} is not a positive square-free integer", start)
    scanner.expect(")")
    return SurdScalar.sqrt(n)


def _parse_scalar(scanner: _Scanner) -> SurdScalar:
    sign = scanner.match(_SIGN)
    total = _scalar_term(scanner)
    if sign and sign.group() == "-":
        total = -total
    while scanner.peek() in ("+", "-"):
        op_pos = scanner.pos
        op = scanner.match(_SIGN).group()
        term = _scalar_term(scanner)
        try:
            total = total + term if op == "+" else total - term
        except ParameterError as e:
            scanner.fail(str(e), op_pos)
    return total


def parse_scalar(text: str, line: int = 1, column: int = 1) -> SurdScalar:
    """Exact value of a scalar literal.

    Raises:
        ConfigParseError: malformed literal, zero denominator or a radicand
            that is not square-free
    """
    scanner = _Scanner(text, line, column)
    value = _parse_scalar(scanner)
    scanner.finish()
    return value


# -- elements -------------------------------------------------------------------


def _coefficient(scanner: _Scanner) -> Optional[complex]:
    scanner.skip_ws()
    start = scanner.pos
    paren = scanner.match(_PAREN_COMPLEX)
    if paren:
        try:
            return complex(paren.group(1).replace(" ", ""))
        except ValueError:
            scanner.fail(f"bad complex coefficient '{paren.group(1)}'", start)
    number = scanner.match(_NUMBER)
    if number is None:
        return None
    token = number.group()
    if "/" in token:
        return complex(float(Fraction(token)))
    return complex(token)


def _torus_monomial(scanner: _Scanner, letters: str) -> Tuple[int, ...]:
    exponents = [0] * len(letters)
    last = -1
    while True:
        scanner.skip_ws()
        start = scanner.pos
        letter = scanner.match(_TORUS_LETTER)
        if letter is None:
            break
        name = letter.group()
        if name not in letters:
            scanner.fail(f"letter '{name}' is not available here (use {' '.join(letters)})", start)
        slot = letters.index(name)
        if slot <= last:
            scanner.fail(f"letters must appear once each, in the order {' '.join(letters)}", start)
        last = slot
        power = 1
        if scanner.literal("^"):
            exponent = scanner.match(_SIGNED_INT)
            if exponent is None:
                scanner.fail("expected an integer exponent")
            power = int(exponent.group())
        exponents[slot] = power
    if last < 0:
        scanner.fail(f"expected a monomial in {' '.join(letters)}")
    return tuple(exponents)


def _sum_of_terms(
    scanner: _Scanner, parse_target: Callable[[_Scanner], T], unit: T, starts_target: Callable[[str], bool]
) -> List[Tuple[complex, T]]:
    terms: List[Tuple[complex, T]] = []
    sign = 1
    first = True
    while first or scanner.peek() in ("+", "-"):
        op = scanner.match(_SIGN)
        if op is not None:
            sign = -1 if op.group() == "-" else 1
        coeff = _coefficient(scanner)
        if coeff is None:
            if not starts_target(scanner.peek()):
                scanner.fail("expected a coefficient or a monomial")
            terms.append((sign * 1.0 + 0j, parse_target(scanner)))
        elif scanner.literal("*") or starts_target(scanner.peek()):
            terms.append((sign * coeff, parse_target(scanner)))
        else:
            terms.append((sign * coeff, unit))
        first = False
    scanner.finish()
    return terms


def parse_element(
    text: str,
    theta1: SurdScalar,
    theta2: Optional[SurdScalar] = None,
    line: int = 1,
    column: int = 1,
):
    """TorusElement (theta2 None, letters u v) or TensorElement (letters u v w z)."""
    scanner = _Scanner(text, line, column)
    letters = _LETTER_ORDER if theta2 is not None else _LETTER_ORDER[:2]
    unit = (0,) * len(letters)
    terms = _sum_of_terms(
        scanner,
        lambda s: _torus_monomial(s, letters),
        unit,
        lambda ch: ch != "" and ch in _LETTER_ORDER,
    )
    coeffs: Dict[Tuple[int, ...], complex] = {}
    for coeff, mono in terms:
        coeffs[mono] = coeffs.get(mono, 0j) + coeff
    if theta2 is None:
        return TorusElement(theta1, coeffs)
    return TensorElement(theta1, theta2, {TensorMonomial(*m): c for m, c in coeffs.items()})


# -- words ------------------------------------------------------------------------


def _word(scanner: _Scanner) -> Word:
    if scanner.match(_IDENTITY_WORD):
        return Word.identity()
    letters = []
    while True:
        scanner.skip_ws()
        start = scanner.pos
        found = scanner.match(_WORD_LETTER)
        if found is None:
            break
        family, index, power = found.group(1), int(found.group(2)), found.group(3)
        if family == "s" and index < 1:
            scanner.fail(f"s-letters are numbered from 1, got s{index}", start)
        sign = -1 if power == "-1" else 1
        letters.append(Letter.s(index, sign) if family == "s" else Letter.t(index, sign))
    if not letters:
        scanner.fail("expected a word (letters like s1, t0^-1, or e)")
    return Word(tuple(letters))


def parse_word(text: str, line: int = 1, column: int = 1) -> Word:
    scanner = _Scanner(text, line, column)
    word = _word(scanner)
    scanner.finish()
    return word


def parse_observable(text: str, line: int = 1, column: int = 1) -> GroupObservable:
    """Finite sum of coefficient * word terms."""
    scanner = _Scanner(text, line, column)
    terms = _sum_of_terms(scanner, _word, Word.identity(), lambda ch: ch in ("s", "t", "e"))
    observable = GroupObservable()
    for coeff, word in terms:
        observable = observable + GroupObservable.l(word, coeff)
    return observable


# -- config values --------------------------------------------------------------


def parse_sizes(text: str, line: int = 1, column: int = 1) -> Tuple[Fraction, ...]:
    sizes = []
    offset = 0
    for part in text.split(","):
        stripped = part.strip()
        lead = len(part) - len(part.lstrip())
        try:
            sizes.append(Fraction(stripped))
        except (ValueError, ZeroDivisionError):
            raise ConfigParseError(f"bad size '{stripped}'", line, column + offset + lead)
        offset += len(part) + 1
    return tuple(sizes)


def parse_cycles(text: str, line: int = 1, column: int = 1) -> Cycles:
    stripped = text.strip()
    if stripped.startswith("increasing:"):
        count = stripped.split(":", 1)[1].strip()
        if not count.isdigit():
            raise ConfigParseError("increasing:N needs an integer N", line, column)
        return increasing_cycles(int(count))
    if not stripped:
        return ()
    cycles = []
    offset = 0
    for chunk in text.split(";"):
        try:
            cycles.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError:
            raise ConfigParseError(f"bad cycle '{chunk.strip()}'", line, column + offset)
        offset += len(chunk) + 1
    return tuple(cycles)


def parse_s2_rule(text: str, line: int = 1, column: int = 1) -> S2Rule:
    stripped = text.strip()
    if stripped == "shift":
        return S2Rule.shift()
    if stripped == "identity":
        return S2Rule.identity()
    if stripped.startswith("cycles:") and stripped[7:].strip().isdigit():
        return S2Rule.cycles(int(stripped[7:]))
    raise ConfigParseError(f"unknown S2 rule '{stripped}' (shift, identity, cycles:L)", line, column)


def _parse_enum(enum_cls, what: str):
    def parse(text: str, line: int, column: int):
        try:
            return enum_cls(text.strip())
        except ValueError:
            choices = ", ".join(member.value for member in enum_cls)
            raise ConfigParseError(f"unknown {what} '{text.strip()}' ({choices})", line, column)

    return parse


def _parse_int(text: str, line: int, column: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigParseError(f"expected an integer, got '{text.strip()}'", line, column)


def _parse_fraction(text: str, line: int, column: int) -> Fraction:
    value = parse_scalar(text, line, column)
    if not value.is_rational:
        raise ConfigParseError("expected a rational number", line, column)
    return value.rational


# -- config files ---------------------------------------------------------------

_SECTION = re.compile(r"^\s*\[([^\]]+)\]")
_OPTION = re.compile(r"^\s*([^=:\s#][^=:]*?)\s*[=:]\s*")

KNOWN_KEYS = {
    "system": {
        "kind", "group", "theta1", "theta2", "p", "q", "c", "d",
        "s1_size", "t_cycles", "k_cycles", "t_s2", "k_s2",
    },
    "folner": {"shape", "start", "sizes"},
    "observable": {"element", "a", "b"},
    "functional": {"kind"},
    "run": {"seed"},
}


def _locate_values(text: str) -> Dict[Tuple[str, str], Tuple[int, int]]:
    """(section, key) -> (line, column) of the value's first character."""
    positions = {}
    section = None
    for number, raw in enumerate(text.splitlines(), start=1):
        header = _SECTION.match(raw)
        if header:
            section = header.group(1).strip()
            continue
        option = _OPTION.match(raw)
        if option and section is not None and not raw[:1].isspace():
            positions[(section, option.group(1).strip().lower())] = (number, option.end() + 1)
    return positions


class _Sections:
    """configparser view that parses values in place and keeps their positions."""

    def __init__(self, parser: configparser.ConfigParser, positions, source: str, text: str):
        self.parser = parser
        self.positions = positions
        self.source = source
        self.text = text

    def has(self, section: str, key: Optional[str] = None) -> bool:
        if key is None:
            return self.parser.has_section(section)
        return self.parser.has_option(section, key)

    def position(self, section: str, key: str) -> Tuple[int, int]:
        return self.positions.get((section, key), (1, 1))

    def get(self, section: str, key: str, parse: Callable[[str, int, int], T], default=None) -> T:
        if not self.has(section, key):
            return default
        line, column = self.position(section, key)
        return parse(self.parser.get(section, key), line, column)

    def require(self, section: str, key: str, parse: Callable[[str, int, int], T]) -> T:
        if not self.has(section, key):
            raise ConfigParseError(f"[{section}] needs '{key}'", _section_line(self.text, section), 1)
        return self.get(section, key, parse)

    def constraint(self, section: str, key: str, error: ParameterError) -> "ConfigParseError":
        line, column = self.position(section, key)
        return ConfigParseError(str(error), line, column)


def _read_sections(path: str) -> _Sections:
    text = Path(path).read_text(encoding="utf-8")
    # ';' separates cycles, so only '#' starts a comment
    parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",))
    try:
        parser.read_string(text, source=str(path))
    except configparser.MissingSectionHeaderError as e:
        raise ConfigParseError("expected a [section] header", e.lineno, 1)
    except configparser.ParsingError as e:
        raise ConfigParseError("malformed line", e.errors[0][0], 1)
    except (configparser.DuplicateOptionError, configparser.DuplicateSectionError) as e:
        raise ConfigParseError(e.message.split(":")[-1].strip(), e.lineno or 1, 1)
    positions = _locate_values(text)
    for section in parser.sections():
        if section not in KNOWN_KEYS:
            raise ConfigParseError(f"unknown section [{section}]", _section_line(text, section), 1)
        for key in parser.options(section):
            if key not in KNOWN_KEYS[section]:
                line, _ = positions.get((section, key), (1, 1))
                raise ConfigParseError(f"unknown key '{key}' in [{section}]", line, 1)
    return _Sections(parser, positions, str(path), text)


def _section_line(text: str, section: str) -> int:
    for number, raw in enumerate(text.splitlines(), start=1):
        header = _SECTION.match(raw)
        if header and header.group(1).strip() == section:
            return number
    return 1


def _system_section(sections: _Sections) -> SystemSection:
    if not sections.has("system"):
        raise ConfigParseError("missing [system] section", 1, 1)
    kind = sections.require("system", "kind", _parse_enum(SystemKind, "system kind"))
    group = sections.get("system", "group", _parse_enum(GroupKind, "group"), kind.default_group)
    theta1 = sections.get("system", "theta1", parse_scalar, SurdScalar())
    default_theta2 = -theta1 if kind is SystemKind.QTORUS_MIRROR else SurdScalar()
    theta2 = sections.get("system", "theta2", parse_scalar, default_theta2)
    one = SurdScalar(Fraction(1))
    p = sections.get("system", "p", parse_scalar, one)
    q = sections.get("system", "q", parse_scalar, one)
    c = sections.get("system", "c", parse_scalar)
    d = sections.get("system", "d", parse_scalar)
    if kind is SystemKind.QTORUS_MIRROR and c is not None and d is None:
        d = one
    dual = None
    if kind is SystemKind.GROUP_DUAL:
        t_cycles = sections.require("system", "t_cycles", parse_cycles)
        k_cycles = sections.get("system", "k_cycles", parse_cycles, t_cycles)
        largest = max((i for cycle in t_cycles + k_cycles for i in cycle), default=0)
        s1_size = sections.get("system", "s1_size", _parse_int, largest)
        try:
            dual = DualSystemConfig(
                s1_size=s1_size,
                t_cycles=t_cycles,
                k_cycles=k_cycles,
                t_s2=sections.get("system", "t_s2", parse_s2_rule, S2Rule.shift()),
                k_s2=sections.get("system", "k_s2", parse_s2_rule, S2Rule.identity()),
            )
        except ParameterError as e:
            raise sections.constraint("system", "t_cycles", e)
    return SystemSection(kind, group, theta1, theta2, p, q, c, d, dual)


def _folner_section(sections: _Sections) -> Optional[FolnerSection]:
    if not sections.has("folner"):
        return None
    shape = sections.require("folner", "shape", _parse_enum(RegionShape, "region shape"))
    sizes = sections.require("folner", "sizes", parse_sizes)
    start = sections.get("folner", "start", _parse_fraction, Fraction(0))
    try:
        folner = FolnerSection(shape, sizes, start)
        folner.regions()
    except ParameterError as e:
        raise sections.constraint("folner", "sizes", e)
    return folner


def _check_alphabet(observable: GroupObservable, dual: DualSystemConfig, sections: _Sections, key: str) -> None:
    for word in observable.coeffs:
        for letter in word:
            if letter.family is Family.S1 and letter.index > dual.s1_size:
                raise sections.constraint(
                    "observable", key,
                    ParameterError(f"{letter} is outside the alphabet s1..s{dual.s1_size}"),
                )


def load_config(path: str) -> ExperimentConfig:
    """Parse and validate an experiment file.

    Raises:
        ConfigParseError: syntax errors and malformed values, with position
        ParameterError: values that parse but contradict each other
    """
    sections = _read_sections(path)
    system = _system_section(sections)
    folner = _folner_section(sections)

    element = a = b = None
    if system.kind is SystemKind.GROUP_DUAL:
        a = sections.get("observable", "a", parse_observable)
        b = sections.get("observable", "b", parse_observable)
        for key, observable in (("a", a), ("b", b)):
            if observable is not None:
                _check_alphabet(observable, system.dual, sections, key)
    else:
        theta2 = system.theta2 if system.kind.tensor else None
        element = sections.get(
            "observable", "element",
            lambda t, line, col: parse_element(t, system.theta1, theta2, line, col),
        )

    functional_kind = sections.get("functional", "kind", _parse_enum(FunctionalKind, "functional"))
    seed = sections.get("run", "seed", _parse_int, 0)
    config = ExperimentConfig(
        system=system,
        folner=folner,
        element=element,
        a=a,
        b=b,
        functional_kind=functional_kind,
        seed=seed,
        source=sections.source,
    )
    if functional_kind is not None:
        config.functional()
    return config


class ConfigParseError(ValueError):
    """Malformed literal or config file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
