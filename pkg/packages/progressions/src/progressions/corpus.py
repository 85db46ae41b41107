import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from conf import get_worker_count
from graphs import AbelianGroup, GroupElement

from progressions.extract import extract_progression
from progressions.models import CorpusRecord, ProgressionError
from progressions.sets import SymmetricSet, word_length

logger = logging.getLogger(__name__)


class CorpusInstance:
    """An extraction input (Γ, A, Q, r)."""

    def __init__(
        self,
        index: int,
        group: AbelianGroup,
        generators: list[GroupElement],
        Q: SymmetricSet,
        r: int,
    ):
        self.index = index
        self.group = group
        self.generators = generators
        self.Q = Q
        self.r = r

    def __repr__(self) -> str:
        return (
            f"CorpusInstance({self.index}, {self.group}, {self.generators}, "
            f"|Q|={self.Q.size}, r={self.r})"
        )


def _random_moduli(rng: np.random.Generator, max_order: int, max_rank: int) -> list[int]:
    rank = int(rng.integers(1, max_rank + 1))
    moduli: list[int] = []
    room = max_order
    for _ in range(rank):
        if room < 2:
            break
        n = int(rng.integers(2, min(room, max_order) + 1))
        moduli.append(n)
        room //= n
    return moduli or [2]


def random_corpus(
    seed: int,
    count: int,
    max_order: int = 240,
    max_rank: int = 3,
    max_generators: int = 3,
) -> list[CorpusInstance]:
    """
    Random extraction instances.

    Each instance draws an Abelian group of order at most ``max_order``,
    one to ``max_generators`` random generators, Q = {0} or (one time in
    three) the subgroup generated by a random element, and r uniform in
    [0, diam] where diam is the largest word length of the generators.
    Every Q drawn is a subgroup, so r·Â is always divisible by it.
    """
    rng = np.random.default_rng(seed)
    instances = []
    for index in range(count):
        group = AbelianGroup(_random_moduli(rng, max_order, max_rank))
        k = int(rng.integers(1, max_generators + 1))
        generators = [group.element(int(i)) for i in rng.integers(0, group.order, size=k)]
        if rng.random() < 1 / 3:
            Q = SymmetricSet.subgroup(group, [group.element(int(rng.integers(group.order)))])
        else:
            Q = SymmetricSet.zero(group)
        diam = int(word_length(group, generators).max())
        r = int(rng.integers(0, diam + 1))
        instances.append(CorpusInstance(index, group, generators, Q, r))
    logger.info(f"Drew {count} corpus instances from seed {seed}")
    return instances


def run_instance(instance: CorpusInstance) -> CorpusRecord:
    record = CorpusRecord(
        index=instance.index,
        moduli=list(instance.group.moduli),
        generators=[list(g) for g in instance.generators],
        q_size=instance.Q.size,
        radius=instance.r,
    )
    try:
        result = extract_progression(instance.group, instance.generators, instance.Q, instance.r)
    except ProgressionError as e:
        logger.error(f"Instance {instance.index} failed: {e}")
        return record.model_copy(update={"error": str(e)})
    return record.model_copy(
        update={
            "lengths": result.lengths,
            "permutation": result.permutation,
            "volume": result.volume,
            "certified": result.proper_mod_q
            and result.subset_of_ball
            and result.cover_certified,
        }
    )


def certify_corpus(
    instances: list[CorpusInstance], workers: int | None = None
) -> list[CorpusRecord]:
    """Extract and certify every instance, in input order."""
    workers = get_worker_count() if workers is None else workers
    if workers <= 1:
        records = [run_instance(instance) for instance in instances]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            records = list(executor.map(run_instance, instances))
    failures = sum(not record.certified for record in records)
    logger.info(f"Certified {len(records) - failures} of {len(records)} corpus instances")
    return records
