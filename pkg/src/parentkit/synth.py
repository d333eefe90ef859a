"""Random small corpora for property tests and benchmarks."""
import random
from typing import Dict, List, Optional, Tuple

from .parent import Instance
from .table import Table, TableRecord


def random_tokens(rng: random.Random, vocab: List[str], min_len: int, max_len: int):
    return tuple(rng.choice(vocab) for _ in range(rng.randint(min_len, max_len)))


def random_instance(rng: random.Random, key: str, vocab_size: int = 10, max_len: int = 12,
                    max_records: int = 4, empty_generation_rate: float = 0.05,
                    value_max_len: Optional[int] = None) -> Instance:
    if value_max_len is None:
        value_max_len = max(1, max_len // 3)
    vocab = [f"w{i}" for i in range(vocab_size)]
    records = []
    for _ in range(rng.randint(1, max_records)):
        attr = random_tokens(rng, vocab, 0, 2)
        value = random_tokens(rng, vocab, 1, value_max_len)
        records.append(TableRecord(attr, value, " ".join(attr), " ".join(value)))
    reference = random_tokens(rng, vocab, 1, max_len)
    if rng.random() < empty_generation_rate:
        generation = ()
    elif rng.random() < 0.1:
        generation = reference
    else:
        generation = random_tokens(rng, vocab, 1, max_len)
    return Instance(key, Table(tuple(records)), reference, generation, " ".join(reference))


def synthetic_corpus(n: int, seed: int = 0, **kwargs) -> Tuple[List[Instance], Dict[str, tuple]]:
    """``n`` random instances and their generations keyed by id."""
    rng = random.Random(seed)
    instances = [random_instance(rng, f"ex{i:06d}", **kwargs) for i in range(n)]
    return instances, {inst.id: inst.generation for inst in instances}
