"""Recursive-descent parser for the supported Java subset.

Covers Java 8 declarations, statements, and expressions with name-based
resolution in mind: no type inference, no classpath. Lambdas are opaque
(their bodies produce no events), annotation arguments are skipped, and
generic type arguments are parsed only to recover referenced type names.

Expression structure is not retained; parsing emits flat per-body events:
  - call expressions (receiver text, simple name, argument count)
  - decision points (if, for, while, do, case, catch, ?:, &&, ||)
  - simple-name variable uses (bare identifiers and ``this.x``)
  - referenced type names from declared contexts (locals, news, casts)
"""

from __future__ import annotations

from contextlib import contextmanager

from .lexer import (
    MODIFIER_KEYWORDS,
    PRIMITIVE_TYPES,
    LexResult,
    ParseError,
    Token,
    tokenize,
)
from .tree import (
    CallEvent,
    Decision,
    EventSink,
    FieldDecl,
    InitBlock,
    MethodDecl,
    SyntaxTree,
    TypeDecl,
)


class _Backtrack(Exception):
    """Internal: speculative parse failed; caller restores the position."""


_LITERAL_KEYWORDS = {"true", "false", "null"}
_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="}
_BINARY_OPS = {
    "+", "-", "*", "/", "%", "<", "<=", ">=", "==", "!=", "&", "|", "^", "<<",
}


def parse_source(text: str, path: str = "<string>") -> SyntaxTree:
    """Parse one source file; raises ParseError with file/line/column."""
    lex = tokenize(text, path)
    return _Parser(lex, path).compilation_unit()


class _Parser:
    def __init__(self, lex: LexResult, path: str):
        self.lex = lex
        self.toks = lex.tokens
        self.pos = 0
        self.path = path
        self.sinks: list[EventSink] = [EventSink()]  # bottom sink catches strays
        self.type_stack: list[TypeDecl] = []
        self.suppress = 0

    # ---- token plumbing -------------------------------------------------

    @property
    def cur(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.cur.text == text and self.cur.kind in ("op", "keyword")

    def at_ident(self) -> bool:
        return self.cur.kind == "ident"

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}, found {self.cur.text!r}")
        tok = self.cur
        self.pos += 1
        return tok

    def expect_ident(self) -> Token:
        if not self.at_ident():
            self.fail(f"expected identifier, found {self.cur.text!r}")
        tok = self.cur
        self.pos += 1
        return tok

    def fail(self, message: str):
        tok = self.cur
        raise ParseError(self.path, tok.line, tok.col, message)

    def adjacent(self, a: Token, b: Token) -> bool:
        return a.line == b.line and a.col + len(a.text) == b.col

    # ---- events ---------------------------------------------------------

    @contextmanager
    def sink(self, sink: EventSink):
        self.sinks.append(sink)
        try:
            yield
        finally:
            self.sinks.pop()

    @contextmanager
    def _suppressed(self):
        self.suppress += 1
        try:
            yield
        finally:
            self.suppress -= 1

    def emit_call(self, receiver: str | None, name: str, argc: int, line: int) -> None:
        if not self.suppress:
            self.sinks[-1].calls.append(CallEvent(receiver, name, argc, line))

    def emit_decision(self, kind: str, line: int) -> None:
        if not self.suppress:
            self.sinks[-1].decisions.append(Decision(kind, line))

    def emit_var_use(self, name: str) -> None:
        if not self.suppress:
            self.sinks[-1].var_uses.append(name)

    def emit_type_refs(self, names) -> None:
        if not self.suppress:
            self.sinks[-1].type_refs.extend(names)

    # ---- compilation unit -------------------------------------------------

    def compilation_unit(self) -> SyntaxTree:
        package = ""
        imports: list[str] = []
        while self.at("@") and self.peek().kind == "ident" and self._package_ahead():
            self.pos += 1  # package annotations
            self.qualified_name_text()
            if self.at("("):
                self.skip_balanced("(", ")")
        if self.at("package"):
            self.pos += 1
            package = self.qualified_name_text()
            self.expect(";")
        while self.at("import"):
            self.pos += 1
            self.accept("static")
            name = self.qualified_name_text()
            if self.accept("."):
                self.expect("*")
                name += ".*"
            self.expect(";")
            imports.append(name)
        types: list[TypeDecl] = []
        while self.cur.kind != "eof":
            if self.accept(";"):
                continue
            types.append(self.type_declaration())
        for t in types:
            self._set_package(t, package)
        return SyntaxTree(
            path=self.path,
            package=package,
            imports=tuple(imports),
            types=types,
            comments=list(self.lex.comments),
            code_lines=self.lex.code_lines,
            n_lines=self.lex.n_lines,
        )

    def _package_ahead(self) -> bool:
        k = self.pos
        depth = 0
        while k < len(self.toks):
            text = self.toks[k].text
            if depth == 0 and text == "package":
                return True
            if depth == 0 and text in ("class", "interface", "enum", "import"):
                return False
            if text == "(":
                depth += 1
            elif text == ")":
                depth -= 1
            k += 1
        return False

    def _set_package(self, t: TypeDecl, package: str) -> None:
        t.package = package
        for child in t.nested + t.anonymous:
            self._set_package(child, package)

    def qualified_name_text(self) -> str:
        parts = [self.expect_ident().text]
        while self.at(".") and self.peek().kind == "ident":
            self.pos += 1
            parts.append(self.expect_ident().text)
        return ".".join(parts)

    # ---- declarations -------------------------------------------------------

    def modifiers_and_annotations(self) -> tuple[set[str], list[str], int]:
        """Returns (modifiers, annotation simple names, start line)."""
        mods: set[str] = set()
        annos: list[str] = []
        start_line = self.cur.line
        while True:
            if self.at("@") and self.peek().kind == "ident":
                self.pos += 1
                name = self.qualified_name_text()
                annos.append(name.rsplit(".", 1)[-1])
                if self.at("("):
                    self.skip_balanced("(", ")")
                continue
            if self.cur.kind == "keyword" and self.cur.text in MODIFIER_KEYWORDS:
                mods.add(self.cur.text)
                self.pos += 1
                continue
            return mods, annos, start_line

    def skip_balanced(self, open_text: str, close_text: str) -> None:
        self.expect(open_text)
        depth = 1
        while depth:
            if self.cur.kind == "eof":
                self.fail(f"unbalanced {open_text!r}")
            if self.at(open_text):
                depth += 1
            elif self.at(close_text):
                depth -= 1
            self.pos += 1

    def skip_type_params(self) -> None:
        """Skip a <...> section by angle depth ('>' is always a single token)."""
        self.expect("<")
        depth = 1
        while depth:
            if self.cur.kind == "eof" or self.at(";") or self.at("{"):
                self.fail("unbalanced type parameter list")
            if self.at("<"):
                depth += 1
            elif self.at(">"):
                depth -= 1
            self.pos += 1

    def type_declaration(self) -> TypeDecl:
        mods, annos, start_line = self.modifiers_and_annotations()
        return self._type_declaration_rest(mods, annos, start_line)

    def _type_declaration_rest(
        self, mods: set[str], annos: list[str], start_line: int
    ) -> TypeDecl:
        if self.at("@") and self.peek().text == "interface":
            self.pos += 2
            return self.class_like("annotation", mods, annos, start_line)
        if self.accept("class"):
            return self.class_like("class", mods, annos, start_line)
        if self.accept("interface"):
            return self.class_like("interface", mods, annos, start_line)
        if self.accept("enum"):
            return self.enum_declaration(mods, annos, start_line)
        self.fail(f"expected type declaration, found {self.cur.text!r}")

    def class_like(
        self, kind: str, mods: set[str], annos: list[str], start_line: int
    ) -> TypeDecl:
        name = self.expect_ident().text
        if self.at("<"):
            self.skip_type_params()
        extends: list[str] = []
        implements: list[str] = []
        if self.accept("extends"):
            extends.append(self.type_base_name())
            while kind in ("interface", "annotation") and self.accept(","):
                extends.append(self.type_base_name())
        if self.accept("implements"):
            implements.append(self.type_base_name())
            while self.accept(","):
                implements.append(self.type_base_name())
        decl = TypeDecl(
            kind=kind,
            name=name,
            modifiers=frozenset(mods),
            annotations=tuple(annos),
            extends_names=tuple(extends),
            implements_names=tuple(implements),
        )
        end_line = self.class_body(decl)
        decl.line_span = (start_line, end_line)
        return decl

    def type_base_name(self) -> str:
        """Dotted name of a supertype, generics stripped."""
        name = self.qualified_name_text()
        if self.at("<"):
            self.skip_type_params()
        return name

    def enum_declaration(self, mods: set[str], annos: list[str], start_line: int) -> TypeDecl:
        name = self.expect_ident().text
        implements: list[str] = []
        if self.accept("implements"):
            implements.append(self.type_base_name())
            while self.accept(","):
                implements.append(self.type_base_name())
        decl = TypeDecl(
            kind="enum",
            name=name,
            modifiers=frozenset(mods),
            annotations=tuple(annos),
            extends_names=(),
            implements_names=tuple(implements),
        )
        self.expect("{")
        self.type_stack.append(decl)
        try:
            constant_init = EventSink()
            while self.at("@") or self.at_ident():
                while self.at("@"):
                    self.pos += 1
                    self.qualified_name_text()
                    if self.at("("):
                        self.skip_balanced("(", ")")
                self.expect_ident()
                if self.at("("):
                    with self.sink(constant_init):
                        self.call_arguments_no_event()
                if self.at("{"):
                    body = TypeDecl(
                        kind="class",
                        name=f"{name}$const",
                        modifiers=frozenset(),
                        annotations=(),
                        extends_names=(),
                        implements_names=(),
                    )
                    body_start = self.cur.line
                    body.line_span = (body_start, self.class_body(body))
                    decl.anonymous.append(body)
                if not self.accept(","):
                    break
            if constant_init.calls or constant_init.decisions or constant_init.var_uses:
                decl.inits.append(
                    InitBlock(static=True, line_span=(start_line, start_line),
                              events=constant_init)
                )
            if self.accept(";"):
                end_line = self.class_members(decl)
            else:
                end_line = self.expect("}").line
        finally:
            self.type_stack.pop()
        decl.line_span = (start_line, end_line)
        return decl

    def class_body(self, decl: TypeDecl) -> int:
        self.expect("{")
        self.type_stack.append(decl)
        try:
            return self.class_members(decl)
        finally:
            self.type_stack.pop()

    def class_members(self, decl: TypeDecl) -> int:
        """Parse members until the closing brace; returns its line."""
        while True:
            if self.at("}"):
                return self.expect("}").line
            if self.cur.kind == "eof":
                self.fail("unterminated class body")
            if self.accept(";"):
                continue
            if self.at("{"):
                block = InitBlock(static=False, line_span=(self.cur.line, 0))
                with self.sink(block.events):
                    end = self.block()
                block.line_span = (block.line_span[0], end)
                decl.inits.append(block)
                continue
            mods, annos, start_line = self.modifiers_and_annotations()
            if self.at("{"):
                block = InitBlock(static="static" in mods, line_span=(start_line, 0))
                with self.sink(block.events):
                    end = self.block()
                block.line_span = (start_line, end)
                decl.inits.append(block)
                continue
            if self.at("class") or self.at("interface") or self.at("enum") or (
                self.at("@") and self.peek().text == "interface"
            ):
                decl.nested.append(self._type_declaration_rest(mods, annos, start_line))
                continue
            if self.at("<"):
                self.skip_type_params()
            if self.at_ident() and self.cur.text == decl.name.split("$")[0] \
                    and self.peek().text == "(":
                ctor_name = self.expect_ident().text
                decl.methods.append(
                    self.method_rest(None, (), ctor_name, mods, annos, start_line, True)
                )
                continue
            try:
                type_text, type_names = self.parse_type()
            except _Backtrack:
                self.fail(f"expected member declaration, found {self.cur.text!r}")
            name = self.expect_ident().text
            if self.at("("):
                decl.methods.append(
                    self.method_rest(
                        type_text, type_names, name, mods, annos, start_line, False
                    )
                )
            else:
                self.field_rest(decl, type_text, type_names, name, mods, annos, start_line)

    def method_rest(
        self,
        return_type: str | None,
        return_names: tuple[str, ...],
        name: str,
        mods: set[str],
        annos: list[str],
        start_line: int,
        is_constructor: bool,
    ) -> MethodDecl:
        param_types, param_names = self.parameter_list()
        while self.at("["):  # archaic `int m()[]`
            self.pos += 1
            self.expect("]")
        if self.accept("throws"):
            self.type_base_name()
            while self.accept(","):
                self.type_base_name()
        method = MethodDecl(
            name=name,
            modifiers=frozenset(mods),
            annotations=tuple(annos),
            param_types=tuple(param_types),
            param_type_names=tuple(param_names),
            return_type=return_type,
            return_type_names=return_names,
            is_constructor=is_constructor,
            has_body=False,
            line_span=(start_line, start_line),
        )
        if self.accept("default"):  # annotation member default value
            with self._suppressed():
                self.variable_initializer()
        if self.at("{"):
            method.has_body = True
            with self.sink(method.events):
                end_line = self.block()
        else:
            end_line = self.expect(";").line
        method.line_span = (start_line, end_line)
        return method

    def parameter_list(self) -> tuple[list[str], list[str]]:
        self.expect("(")
        types: list[str] = []
        names: list[str] = []
        if not self.at(")"):
            while True:
                self.modifiers_and_annotations()  # final / annotations
                try:
                    type_text, type_names = self.parse_type()
                except _Backtrack:
                    self.fail(f"expected parameter type, found {self.cur.text!r}")
                if self.accept("..."):
                    type_text += "[]"
                self.expect_ident()
                while self.at("["):
                    self.pos += 1
                    self.expect("]")
                    type_text += "[]"
                types.append(type_text)
                names.extend(type_names)
                if not self.accept(","):
                    break
        self.expect(")")
        return types, names

    def field_rest(
        self,
        decl: TypeDecl,
        type_text: str,
        type_names: tuple[str, ...],
        first_name: str,
        mods: set[str],
        annos: list[str],
        line: int,
    ) -> None:
        name = first_name
        while True:
            dims = ""
            while self.at("["):
                self.pos += 1
                self.expect("]")
                dims += "[]"
            fld = FieldDecl(
                name=name,
                type_text=type_text + dims,
                type_names=type_names,
                modifiers=frozenset(mods),
                annotations=tuple(annos),
                line=line,
            )
            if self.accept("="):
                with self.sink(fld.events):
                    self.variable_initializer()
            decl.fields.append(fld)
            if self.accept(","):
                name = self.expect_ident().text
                continue
            self.expect(";")
            return

    def variable_initializer(self) -> None:
        if self.at("{"):
            self.array_initializer()
        else:
            self.expression()

    def array_initializer(self) -> None:
        self.expect("{")
        while not self.at("}"):
            self.variable_initializer()
            if not self.accept(","):
                break
        self.expect("}")

    # ---- types --------------------------------------------------------------

    def parse_type(self) -> tuple[str, tuple[str, ...]]:
        """Parse a type; returns (normalized text, referenced simple names).

        Raises _Backtrack (position NOT restored; callers save/restore)
        when the tokens cannot form a type.
        """
        if self.at("void"):
            self.pos += 1
            return "void", ()
        if self.cur.kind == "keyword" and self.cur.text in PRIMITIVE_TYPES:
            text = self.cur.text
            self.pos += 1
            return text + self._array_dims(), ()
        if not self.at_ident():
            raise _Backtrack()
        parts = [self.cur.text]
        self.pos += 1
        names: list[str] = []
        args_text = ""
        while self.at(".") and self.peek().kind == "ident":
            self.pos += 1
            parts.append(self.cur.text)
            self.pos += 1
        if self.at("<"):
            args_text, arg_names = self._type_arguments()
            names.extend(arg_names)
        names.insert(0, parts[-1])
        return ".".join(parts) + args_text + self._array_dims(), tuple(names)

    def _array_dims(self) -> str:
        dims = ""
        while self.at("[") and self.peek().text == "]":
            self.pos += 2
            dims += "[]"
        return dims

    def _type_arguments(self) -> tuple[str, list[str]]:
        self.expect("<")
        if self.accept(">"):  # diamond
            return "<>", []
        texts: list[str] = []
        names: list[str] = []
        while True:
            if self.at("?"):
                self.pos += 1
                wtext = "?"
                if self.at("extends") or self.at("super"):
                    kw = self.cur.text
                    self.pos += 1
                    t, n = self.parse_type()
                    wtext = f"? {kw} {t}"
                    names.extend(n)
                texts.append(wtext)
            else:
                t, n = self.parse_type()
                texts.append(t)
                names.extend(n)
            if self.accept(","):
                continue
            if not self.at(">"):
                raise _Backtrack()
            self.pos += 1
            return "<" + ",".join(texts) + ">", names

    # ---- statements -----------------------------------------------------------

    def block(self) -> int:
        self.expect("{")
        while not self.at("}"):
            if self.cur.kind == "eof":
                self.fail("unterminated block")
            self.statement()
        return self.expect("}").line

    def statement(self) -> None:
        tok = self.cur
        if self.at("{"):
            self.block()
            return
        if self.accept(";"):
            return
        if self.accept("if"):
            self.emit_decision("if", tok.line)
            self.expect("(")
            self.expression()
            self.expect(")")
            self.statement()
            if self.accept("else"):
                self.statement()
            return
        if self.accept("while"):
            self.emit_decision("while", tok.line)
            self.expect("(")
            self.expression()
            self.expect(")")
            self.statement()
            return
        if self.accept("do"):
            self.emit_decision("do", tok.line)
            self.statement()
            self.expect("while")
            self.expect("(")
            self.expression()
            self.expect(")")
            self.expect(";")
            return
        if self.accept("for"):
            self.emit_decision("for", tok.line)
            self.for_rest()
            return
        if self.accept("switch"):
            self.expect("(")
            self.expression()
            self.expect(")")
            self.expect("{")
            while not self.at("}"):
                if self.at("case"):
                    case_tok = self.cur
                    self.pos += 1
                    self.emit_decision("case", case_tok.line)
                    self.expression(colon_ends=True)
                    self.expect(":")
                elif self.accept("default"):
                    self.expect(":")
                else:
                    self.statement()
            self.expect("}")
            return
        if self.accept("try"):
            if self.at("("):
                self.resource_spec()
            self.block()
            while self.at("catch"):
                catch_tok = self.cur
                self.pos += 1
                self.emit_decision("catch", catch_tok.line)
                self.expect("(")
                self.modifiers_and_annotations()
                self.type_base_name()
                while self.accept("|"):
                    self.type_base_name()
                self.expect_ident()
                self.expect(")")
                self.block()
            if self.accept("finally"):
                self.block()
            return
        if self.accept("return"):
            if not self.at(";"):
                self.expression()
            self.expect(";")
            return
        if self.accept("throw"):
            self.expression()
            self.expect(";")
            return
        if self.accept("break") or self.accept("continue"):
            if self.at_ident():
                self.pos += 1
            self.expect(";")
            return
        if self.accept("synchronized"):
            self.expect("(")
            self.expression()
            self.expect(")")
            self.block()
            return
        if self.accept("assert"):
            self.expression(colon_ends=True)
            if self.accept(":"):
                self.expression()
            self.expect(";")
            return
        if self.at("class") or (
            (self.at("final") or self.at("abstract")) and self.peek().text == "class"
        ):
            self.type_declaration()  # local class
            return
        if self.at_ident() and self.peek().text == ":":
            self.pos += 2  # label
            self.statement()
            return
        if self.local_var_decl():
            return
        self.expression()
        self.expect(";")

    def resource_spec(self) -> None:
        self.expect("(")
        while True:
            self.modifiers_and_annotations()
            try:
                _text, type_names = self.parse_type()
            except _Backtrack:
                self.fail("expected resource type")
            self.emit_type_refs(type_names)
            self.expect_ident()
            self.expect("=")
            self.expression()
            if self.accept(";") and not self.at(")"):
                continue
            break
        self.expect(")")

    def local_var_decl(self, terminate: bool = True) -> bool:
        """Speculatively parse a local declaration; False means not one.

        Speculation is safe because type parsing emits no events; the
        declaration's type reference is emitted only after confirmation.
        """
        save = self.pos
        try:
            self.modifiers_and_annotations()
            _text, type_names = self.parse_type()
            if not self.at_ident():
                raise _Backtrack()
            self.pos += 1
            if not (self.at("=") or self.at(";") or self.at(",") or self.at("[")):
                raise _Backtrack()
        except _Backtrack:
            self.pos = save
            return False
        self.emit_type_refs(type_names)
        while True:
            while self.at("["):
                self.pos += 1
                self.expect("]")
            if self.accept("="):
                self.variable_initializer()
            if self.accept(","):
                self.expect_ident()
                continue
            break
        if terminate:
            self.expect(";")
        return True

    def for_rest(self) -> None:
        self.expect("(")
        save = self.pos
        try:  # enhanced for: [mods] type ident : expr
            self.modifiers_and_annotations()
            _text, type_names = self.parse_type()
            if not self.at_ident():
                raise _Backtrack()
            self.pos += 1
            if not self.at(":"):
                raise _Backtrack()
            self.pos += 1
        except _Backtrack:
            self.pos = save
        else:
            self.emit_type_refs(type_names)
            self.expression()
            self.expect(")")
            self.statement()
            return
        if not self.accept(";"):
            if not self.local_var_decl():
                self.expression()
                while self.accept(","):
                    self.expression()
                self.expect(";")
        if not self.at(";"):
            self.expression()
        self.expect(";")
        if not self.at(")"):
            self.expression()
            while self.accept(","):
                self.expression()
        self.expect(")")
        self.statement()

    # ---- expressions ------------------------------------------------------

    def expression(self, colon_ends: bool = False) -> None:
        """Flat expression parse: operand (binary-op operand)*.

        Operator precedence is irrelevant here; only event extraction and
        expression boundaries matter. A ternary's ':' is consumed by its
        own '?'; any other ':' terminates the expression.
        """
        self.unary()
        while True:
            tok = self.cur
            if self.at("instanceof"):
                self.pos += 1
                save = self.pos
                try:
                    self.parse_type()
                except _Backtrack:
                    self.pos = save
                    self.fail("expected type after instanceof")
                continue
            if tok.kind != "op":
                return
            text = tok.text
            if text == "?":
                self.pos += 1
                self.emit_decision("ternary", tok.line)
                self.expression()
                self.expect(":")
                self.unary()
                continue
            if text == "&&":
                self.pos += 1
                self.emit_decision("and", tok.line)
                self.unary()
                continue
            if text == "||":
                self.pos += 1
                self.emit_decision("or", tok.line)
                self.unary()
                continue
            if text == ">":
                # merge adjacent '>'/'>=' into shift or shift-assign operators
                self.pos += 1
                prev = tok
                while (
                    self.cur.kind == "op"
                    and self.cur.text in (">", ">=")
                    and self.adjacent(prev, self.cur)
                ):
                    ended = self.cur.text == ">="
                    prev = self.cur
                    self.pos += 1
                    if ended:
                        break
                self.unary()
                continue
            if text in _ASSIGN_OPS or text in _BINARY_OPS:
                self.pos += 1
                self.unary()
                continue
            return

    def unary(self) -> None:
        while self.cur.kind == "op" and self.cur.text in ("+", "-", "!", "~", "++", "--"):
            self.pos += 1
        if self.at("("):
            if self._try_lambda():
                return
            if self._try_cast():
                self.unary()
                return
        self.primary_and_postfix()

    def _scan_matching_paren(self) -> int:
        """Token index just past the ')' matching the '(' at cur."""
        depth = 0
        k = self.pos
        while self.toks[k].kind != "eof":
            t = self.toks[k].text
            if t == "(":
                depth += 1
            elif t == ")":
                depth -= 1
                if depth == 0:
                    return k + 1
            k += 1
        self.fail("unbalanced parenthesis")

    def _try_lambda(self) -> bool:
        after = self._scan_matching_paren()
        if self.toks[after].text != "->":
            return False
        self.pos = after + 1
        self._lambda_body()
        return True

    def _lambda_body(self) -> None:
        # lambdas are opaque: nothing inside contributes events
        with self._suppressed():
            if self.at("{"):
                self.skip_balanced("{", "}")
            else:
                self.expression()

    def _try_cast(self) -> bool:
        save = self.pos
        self.pos += 1  # consume '('
        try:
            type_text, type_names = self.parse_type()
            if not self.at(")"):
                raise _Backtrack()
            self.pos += 1
            nxt = self.cur
            is_primitive = type_text.rstrip("[]") in PRIMITIVE_TYPES
            starts_operand = (
                nxt.kind in ("ident", "number", "string", "char")
                or nxt.text in ("(", "!", "~", "new", "this", "super")
                or (nxt.kind == "keyword" and nxt.text in _LITERAL_KEYWORDS)
                or (is_primitive and nxt.kind == "op" and nxt.text in ("+", "-"))
            )
            if not starts_operand:
                raise _Backtrack()
        except _Backtrack:
            self.pos = save
            return False
        self.emit_type_refs(type_names)
        return True

    def primary_and_postfix(self) -> None:
        chain = self.primary()
        while True:
            if self.at("."):
                nxt = self.peek()
                if nxt.kind == "ident":
                    if self.peek(2).text == "(":
                        self.pos += 2
                        argc = self.call_arguments()
                        self.emit_call(chain, nxt.text, argc, nxt.line)
                        chain = "<expr>"
                    else:
                        self.pos += 2
                        if chain == "this":
                            self.emit_var_use(nxt.text)
                        chain = (
                            f"{chain}.{nxt.text}"
                            if chain not in (None, "<expr>", "super") else "<expr>"
                        )
                    continue
                if nxt.text == "<":
                    self.pos += 1  # explicit generic method call: obj.<T>name(args)
                    self.skip_type_params()
                    name_tok = self.expect_ident()
                    if not self.at("("):
                        self.fail("expected call after explicit type arguments")
                    argc = self.call_arguments()
                    self.emit_call(chain, name_tok.text, argc, name_tok.line)
                    chain = "<expr>"
                    continue
                if nxt.text in ("this", "class", "new", "super"):
                    self.pos += 2
                    if nxt.text == "new":  # qualified creation: outer.new Inner()
                        self.creator()
                    chain = "<expr>"
                    continue
                self.fail(f"unexpected token after '.': {nxt.text!r}")
            if self.at("["):
                self.pos += 1
                self.expression()
                self.expect("]")
                chain = "<expr>"
                continue
            if self.at("++") or self.at("--"):
                self.pos += 1
                chain = "<expr>"
                continue
            if self.at("::"):
                self.pos += 1
                if not self.accept("new"):
                    self.expect_ident()
                chain = "<expr>"
                continue
            return

    def primary(self) -> str | None:
        """Parse a primary; returns the dotted-name chain text while the
        expression is still a plain name ('this', 'super', identifier)."""
        tok = self.cur
        if self.at("("):
            if self._try_lambda():
                return "<expr>"
            self.pos += 1
            self.expression()
            self.expect(")")
            return "<expr>"
        if tok.kind in ("number", "string", "char"):
            self.pos += 1
            return "<expr>"
        if tok.kind == "keyword":
            if tok.text in _LITERAL_KEYWORDS:
                self.pos += 1
                return "<expr>"
            if tok.text == "this":
                self.pos += 1
                if self.at("("):  # explicit constructor invocation
                    self.call_arguments_no_event()
                    return "<expr>"
                return "this"
            if tok.text == "super":
                self.pos += 1
                if self.at("("):  # super constructor invocation
                    self.call_arguments_no_event()
                    return "<expr>"
                return "super"
            if tok.text == "new":
                self.pos += 1
                self.creator()
                return "<expr>"
            if tok.text in PRIMITIVE_TYPES or tok.text == "void":
                self.pos += 1  # int.class, void.class
                self._array_dims()
                return "<expr>"
            self.fail(f"unexpected keyword {tok.text!r} in expression")
        if tok.kind == "ident":
            if self.peek().text == "->":
                self.pos += 2
                self._lambda_body()
                return "<expr>"
            self.pos += 1
            if self.at("("):
                argc = self.call_arguments()
                self.emit_call(None, tok.text, argc, tok.line)
                return "<expr>"
            self.emit_var_use(tok.text)
            return tok.text
        self.fail(f"unexpected token {tok.text!r} in expression")

    def call_arguments(self) -> int:
        """Parse '(args)'; returns the argument count."""
        self.expect("(")
        if self.accept(")"):
            return 0
        argc = 1
        self.expression()
        while self.accept(","):
            argc += 1
            self.expression()
        self.expect(")")
        return argc

    def call_arguments_no_event(self) -> int:
        # explicit constructor invocations (this(...)/super(...)) are not
        # method-call events, but their arguments still are parsed normally
        return self.call_arguments()

    def creator(self) -> None:
        """new Foo(...), new int[5], new Foo[]{...}, anonymous class bodies."""
        if self.cur.kind == "keyword" and self.cur.text in PRIMITIVE_TYPES:
            self.pos += 1
            self._creator_array_rest()
            return
        parts = [self.expect_ident().text]
        while self.at(".") and self.peek().kind == "ident":
            self.pos += 1
            parts.append(self.expect_ident().text)
        names = [parts[-1]]
        if self.at("<"):
            save = self.pos
            try:
                _text, arg_names = self._type_arguments()
                names.extend(arg_names)
            except _Backtrack:
                self.pos = save
        self.emit_type_refs(names)
        if self.at("["):
            self._creator_array_rest()
            return
        self.call_arguments_no_event()
        if self.at("{"):
            anon = TypeDecl(
                kind="class",
                name=f"{parts[-1]}$anon",
                modifiers=frozenset(),
                annotations=(),
                extends_names=(),
                implements_names=(),
            )
            start_line = self.cur.line
            anon.line_span = (start_line, self.class_body(anon))
            if self.type_stack:
                self.type_stack[-1].anonymous.append(anon)

    def _creator_array_rest(self) -> None:
        while self.at("["):
            self.pos += 1
            if not self.at("]"):
                self.expression()
            self.expect("]")
        if self.at("{"):
            self.array_initializer()
