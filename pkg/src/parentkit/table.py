"""Structured inputs: attribute/value records and the ``Name[value]`` text form."""
from dataclasses import dataclass
from typing import Callable, FrozenSet, Iterable, Optional, Tuple

from .errors import EmptyTableError, TableParseError, ValidationError
from .textcore import TokenSeq, tokenize


@dataclass(frozen=True)
class TableRecord:
    attribute: TokenSeq
    value: TokenSeq
    # raw strings are kept so a table can be re-linearized for model input
    attribute_text: str = ""
    value_text: str = ""

    def __post_init__(self):
        if not self.value:
            raise ValidationError(
                f"table record {self.attribute_text or ' '.join(self.attribute)!r} has an empty value"
            )

    @classmethod
    def from_text(cls, attribute: str, value: str,
                  tokenizer: Callable[[str], TokenSeq] = tokenize) -> "TableRecord":
        return cls(
            attribute=tokenizer(attribute.replace("_", " ")),
            value=tokenizer(value),
            attribute_text=attribute,
            value_text=value,
        )


@dataclass(frozen=True)
class Table:
    records: Tuple[TableRecord, ...] = ()

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, str]],
                   tokenizer: Callable[[str], TokenSeq] = tokenize) -> "Table":
        return cls(tuple(TableRecord.from_text(a, v, tokenizer) for a, v in pairs))

    def value_tokens(self) -> Tuple[TokenSeq, ...]:
        return tuple(r.value for r in self.records)


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def parse_linearized_table(text: str,
                           tokenizer: Callable[[str], TokenSeq] = tokenize) -> Table:
    """Parse ``Name[value] Name[value] ...`` into a :class:`Table`.

    Underscores in names become spaces before tokenising
    (``Page_Title`` -> ``["page", "title"]``). Bare trailing text with no
    bracketed value (a header without a cell) is ignored. Nested brackets
    are not supported.

    >>> [r.value for r in parse_linearized_table("A[x] B[y z]")]
    [('x',), ('y', 'z')]
    """
    records = []
    pos = 0
    n = len(text)
    while pos < n:
        open_at = text.find("[", pos)
        close_at = text.find("]", pos)
        if open_at == -1:
            if close_at != -1:
                raise TableParseError("unmatched ']'", _byte_offset(text, close_at))
            break
        if close_at != -1 and close_at < open_at:
            raise TableParseError("unmatched ']'", _byte_offset(text, close_at))
        name = text[pos:open_at].strip()
        close_at = text.find("]", open_at + 1)
        if close_at == -1:
            raise TableParseError("unclosed '['", _byte_offset(text, open_at))
        nested = text.find("[", open_at + 1, close_at)
        if nested != -1:
            raise TableParseError("nested '[' is not supported", _byte_offset(text, nested))
        value = text[open_at + 1:close_at].strip()
        if not tokenizer(value):
            raise TableParseError(f"empty value for {name!r}", _byte_offset(text, open_at))
        records.append(TableRecord.from_text(name, value, tokenizer))
        pos = close_at + 1
    return Table(tuple(records))


def linearize_table(table: Table) -> str:
    """Render a table back into the ``Name[value]`` form, one space apart."""
    parts = []
    for r in table.records:
        name = r.attribute_text if r.attribute_text or not r.attribute else " ".join(r.attribute)
        value = r.value_text or " ".join(r.value)
        parts.append(f"{name}[{value}]")
    return " ".join(parts)


def table_token_set(table: Table) -> FrozenSet[str]:
    """All attribute and value tokens of the table (entailment support set)."""
    tokens = set()
    for r in table.records:
        tokens.update(r.attribute)
        tokens.update(r.value)
    return frozenset(tokens)


def validate_nonempty(table: Table, context: Optional[str] = None) -> None:
    if not table.records:
        where = f" for instance {context!r}" if context else ""
        raise EmptyTableError(f"table has no records{where}")
