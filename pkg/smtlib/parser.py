"""
Reader for SMT-LIB2 scripts, built on pysmt's SmtLibParser.

Each script is read into its own pysmt Environment so symbols from different
files never clash and batch workers do not share a formula manager. The
parser is narrowed to the strict Real fragment: constructs whose meaning
would be lost once pysmt rewrites them (weak relations, equality, let,
quantifiers) are rejected as soon as they are read.
"""
import logging
from dataclasses import dataclass, field
from functools import reduce
from io import StringIO
from itertools import pairwise

import pysmt.smtlib.commands as smtcmd
from pysmt.environment import Environment
from pysmt.exceptions import PysmtException, PysmtSyntaxError, UnknownSmtLibCommandError
from pysmt.fnode import FNode
from pysmt.logics import QF_NRA
from pysmt.smtlib.parser import SmtLibParser
from pysmt.smtlib.script import SmtLibCommand

from .exceptions import SmtLibError, SmtLibSyntaxError, UnsupportedFeatureError

logger = logging.getLogger(__name__)

# Commands whose effect the solver cannot honour.
UNSUPPORTED_COMMANDS = (
    "define-fun", "define-fun-rec", "define-funs-rec", "define-sort", "declare-sort",
    "declare-datatype", "declare-datatypes", "push", "pop", "check-sat-assuming",
    "reset", "reset-assertions",
)

UNSUPPORTED_TERMS = {
    ">=": "non-strict relation (>=)",
    "<=": "non-strict relation (<=)",
    "=": "equality (=)",
    "distinct": "disequality (distinct)",
    "xor": "exclusive or (xor)",
    "let": "let binding",
    "forall": "quantifier (forall)",
    "exists": "quantifier (exists)",
    "_": "indexed identifier",
    **{op: f"operator {op}" for op in ("abs", "div", "mod", "to_real", "to_int", "is_int", "^", "exp", "sin", "cos")},
}

# Errors pysmt lets escape on malformed input besides its own exception types.
_READ_ERRORS = (
    PysmtException, SyntaxError, NotImplementedError, TypeError, ValueError,
    ArithmeticError, AssertionError, LookupError,
)


@dataclass
class ParsedScript:
    environment: Environment
    logic: str = None
    declarations: dict = field(default_factory=dict)
    assertions: list = field(default_factory=list)
    commands: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    occurrences: tuple = ()

    @property
    def variables(self):
        return tuple(self.declarations)


def _position(pos_info):
    if not pos_info:
        return 0, 0
    row, column = pos_info
    return row + 1, column


class RealArithmeticParser(SmtLibParser):
    """
    SmtLibParser restricted to arity-0 Real constants, strict comparisons and
    polynomial arithmetic. Numerals are always read as Real constants.
    """

    def __init__(self, environment=None):
        super().__init__(environment=environment or Environment())
        mgr = self.env.formula_manager
        for key, reason in UNSUPPORTED_TERMS.items():
            self.interpreted[key] = self._unsupported(reason)
        self.interpreted.update({
            "<": self._operator_adapter(self._chain(mgr.LT, "<")),
            ">": self._operator_adapter(self._chain(mgr.GT, ">")),
            "-": self._operator_adapter(self._minus),
            "/": self._operator_adapter(self._divide),
            "=>": self._operator_adapter(self._implies),
            "!": self._operator_adapter(self._strip_annotation),
        })
        for name in UNSUPPORTED_COMMANDS:
            self.commands[name] = self._cmd_unsupported

    def _reset(self):
        super()._reset()
        self.logic = QF_NRA
        self.logic_name = None
        self.declared = {}
        self.occurrences = {}
        self.asserting = False
        self.previous_atom = ""
        self.tokens = None

    def syntax_error(self, message, tokens=None):
        tokens = tokens if tokens is not None else self.tokens
        return SmtLibSyntaxError(message, *_position(getattr(tokens, "pos_info", None)))

    def _unsupported(self, reason):
        def res(stack, tokens, key):
            raise UnsupportedFeatureError(reason)
        return res

    def _chain(self, compare, key):
        def res(*args):
            if len(args) < 2:
                raise self.syntax_error(f"'{key}' takes at least two arguments.")
            return self.env.formula_manager.And([compare(a, b) for a, b in pairwise(args)])
        return res

    def _minus(self, *args):
        mgr = self.env.formula_manager
        if not args:
            raise self.syntax_error("'-' takes at least one argument.")
        if len(args) == 1:
            return mgr.Times(mgr.Real(-1), args[0])
        return reduce(mgr.Minus, args)

    def _divide(self, *args):
        mgr = self.env.formula_manager
        if len(args) < 2:
            raise self.syntax_error("'/' takes at least two arguments.")

        def divide(left, right):
            if right.is_real_constant() and right.constant_value() == 0:
                raise UnsupportedFeatureError("division by zero")
            return mgr.Div(left, right)

        return reduce(divide, args)

    def _implies(self, *args):
        # right associative: a => b => c is a => (b => c)
        mgr = self.env.formula_manager
        if len(args) < 2:
            raise self.syntax_error("'=>' takes at least two arguments.")
        result = args[-1]
        for premise in reversed(args[:-1]):
            result = mgr.Implies(premise, result)
        return result

    def _strip_annotation(self, term, *attributes):
        return term

    def atom(self, token, *args):
        result = super().atom(token, *args)
        previous, self.previous_atom = self.previous_atom, token
        if isinstance(result, FNode):
            if self.asserting and result.is_symbol():
                self.occurrences.setdefault(result.symbol_name(), None)
            return result
        # attribute keywords and their values inside (! term :key value)
        if token.startswith(":") or previous.startswith(":"):
            return result
        raise self.syntax_error(f"Undeclared symbol {token!r}.")

    def get_expression(self, tokens):
        self.tokens = tokens
        return super().get_expression(tokens)

    def get_command_generator(self, script):
        for command in super().get_command_generator(script):
            yield command
            if command.name == smtcmd.EXIT:
                return

    def _cmd_unsupported(self, current, tokens):
        raise UnsupportedFeatureError(f"command {current}")

    def _cmd_set_logic(self, current, tokens):
        (name,) = self.parse_atoms(tokens, current, 1)
        self.logic_name = name
        if name not in ("QF_NRA", "QF_LRA", "ALL"):
            logger.debug(f"Reading a script declared as {name}")
        return SmtLibCommand(current, [name])

    def _declare(self, command, tokens):
        symbol = command.args[0]
        name = symbol.symbol_name()
        sort = symbol.symbol_type()
        if sort.is_function_type():
            raise UnsupportedFeatureError(f"uninterpreted function {name}")
        if not sort.is_real_type():
            raise UnsupportedFeatureError(f"non-Real sort {sort}")
        if name in self.declared:
            raise self.syntax_error(f"{name!r} is declared twice.", tokens)
        self.declared[name] = symbol
        return command

    def _cmd_declare_fun(self, current, tokens):
        return self._declare(super()._cmd_declare_fun(current, tokens), tokens)

    def _cmd_declare_const(self, current, tokens):
        return self._declare(super()._cmd_declare_const(current, tokens), tokens)

    def _cmd_assert(self, current, tokens):
        self.asserting = True
        try:
            command = super()._cmd_assert(current, tokens)
        finally:
            self.asserting = False
        term = command.args[0]
        if not isinstance(term, FNode):
            raise self.syntax_error("Incomplete assertion.", tokens)
        if not self.env.stc.get_type(term).is_bool_type():
            raise self.syntax_error("Asserted term is not Boolean.", tokens)
        return command

    def read(self, text):
        script = self.get_script(StringIO(text))
        parsed = ParsedScript(
            environment=self.env,
            logic=self.logic_name,
            declarations=dict(self.declared),
            occurrences=tuple(self.occurrences),
        )
        for command in script.commands:
            parsed.commands.append(command.name)
            if command.name == smtcmd.ASSERT:
                parsed.assertions.append(command.args[0])
            elif command.name == smtcmd.SET_INFO:
                keyword, value = command.args[0], command.args[1]
                parsed.info[str(keyword)] = str(value)
        return parsed


def parse(text):
    parser = RealArithmeticParser()
    try:
        return parser.read(text)
    except SmtLibError:
        raise
    except UnknownSmtLibCommandError as exc:
        raise parser.syntax_error(f"Unknown command {str(exc)!r}.") from exc
    except PysmtSyntaxError as exc:
        message = getattr(exc, "message", None) or str(exc)
        raise SmtLibSyntaxError(message, *_position(getattr(exc, "pos_info", None))) from exc
    except _READ_ERRORS as exc:
        raise parser.syntax_error(str(exc) or type(exc).__name__) from exc


def parse_file(path):
    with open(path, encoding="utf-8") as handle:
        return parse(handle.read())
