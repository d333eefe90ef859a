import pytest
from hypothesis import given
from hypothesis import strategies as st

from parentkit.errors import EmptyTableError, TableParseError, ValidationError
from parentkit.table import (
    Table,
    TableRecord,
    linearize_table,
    parse_linearized_table,
    table_token_set,
    validate_nonempty,
)


def test_appendix_period_record():
    table = parse_linearized_table("Period[723 – 732]")
    assert len(table) == 1
    assert table.records[0].attribute == ("period",)
    assert table.records[0].value == ("723", "–", "732")


def test_two_records():
    table = parse_linearized_table("A[x] B[y z]")
    assert [r.value for r in table] == [("x",), ("y", "z")]


def test_underscores_become_spaces():
    table = parse_linearized_table("Page_Title[Hudson Line (Metro-North)] Section_Title[Stations]")
    assert table.records[0].attribute == ("page", "title")
    assert table.records[0].value == ("hudson", "line", "(metro-north)")
    assert table.records[1].value == ("stations",)


def test_repeated_attributes_kept_separate():
    table = parse_linearized_table(
        "Zone[Harlem–125th Street Handicapped/disabled access] Zone[Harlem / New Haven Lines diverge]"
    )
    assert len(table) == 2


def test_trailing_header_without_value_is_ignored():
    table = parse_linearized_table("Census Historical population[3,468] Pop")
    assert [r.value for r in table] == [("3,468",)]


@pytest.mark.parametrize("text,offset", [
    ("A[x", 1),
    ("A]x", 1),
    ("A[x] B]y", 6),
    ("A[x[y]]", 3),
])
def test_malformed(text, offset):
    with pytest.raises(TableParseError) as err:
        parse_linearized_table(text)
    assert err.value.offset == offset
    assert "byte offset" in str(err.value)


def test_byte_offset_counts_utf8():
    with pytest.raises(TableParseError) as err:
        parse_linearized_table("É[x] B[y")
    assert err.value.offset == len("É[x] B".encode("utf-8"))


def test_empty_value_rejected():
    with pytest.raises(TableParseError):
        parse_linearized_table("A[  ]")
    with pytest.raises(ValidationError):
        TableRecord(("a",), ())


def test_token_set():
    table = Table.from_pairs([("Pop", "3,468")])
    assert table_token_set(table) == {"pop", "3,468"}
    assert table_token_set(Table()) == frozenset()
    dup = Table.from_pairs([("a", "x y"), ("a", "x")])
    assert table_token_set(dup) == {"a", "x", "y"}


def test_validate_nonempty():
    with pytest.raises(EmptyTableError):
        validate_nonempty(Table(), "ex1")


names = st.text(alphabet=st.characters(blacklist_characters="[]", blacklist_categories=("Cs",)), max_size=12)
values = names.filter(lambda v: v.split())


@given(st.lists(st.tuples(names, values), max_size=5))
def test_relinearize_fixed_point(pairs):
    text = " ".join(f"{a}[{v}]" for a, v in pairs)
    first = parse_linearized_table(text)
    second = parse_linearized_table(linearize_table(first))
    assert [(r.attribute, r.value) for r in first] == [(r.attribute, r.value) for r in second]


@given(st.lists(st.tuples(names, values), min_size=1, max_size=5), st.tuples(names, values))
def test_token_set_monotone(pairs, extra):
    base = Table.from_pairs(pairs)
    grown = Table.from_pairs(pairs + [extra])
    assert table_token_set(base) <= table_token_set(grown)
