"""Split a model output into its first and second part around a separator.

Rules, by number of separator occurrences:

* none: both parts are the whole output;
* exactly one: the text before and the text after it;
* two or more: both parts are the first segment. ``many_sep_second="second"``
  switches the second part to the second segment instead.

Segments are whitespace-trimmed. Matching is a literal substring search.
"""
from dataclasses import dataclass

DEFAULT_SEP = "<SEP>"
MANY_SEP_CHOICES = ("first", "second")


@dataclass(frozen=True)
class SplitOutput:
    first: str
    second: str
    sep_count: int


def split_output(text: str, sep: str = DEFAULT_SEP, many_sep_second: str = "first") -> SplitOutput:
    """
    >>> split_output("s1 <SEP> s2 <SEP> s3")
    SplitOutput(first='s1', second='s1', sep_count=2)
    """
    if not sep:
        raise ValueError("separator must be a non-empty string")
    if many_sep_second not in MANY_SEP_CHOICES:
        raise ValueError(f"many_sep_second must be one of {MANY_SEP_CHOICES}, got {many_sep_second!r}")
    segments = [seg.strip() for seg in text.split(sep)]
    count = len(segments) - 1
    if count == 0:
        return SplitOutput(segments[0], segments[0], 0)
    if count == 1:
        return SplitOutput(segments[0], segments[1], 1)
    second = segments[0] if many_sep_second == "first" else segments[1]
    return SplitOutput(segments[0], second, count)


def sep_bucket(count: int) -> str:
    return "0" if count == 0 else "1" if count == 1 else "many"
