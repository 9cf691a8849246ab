"""
Small-instance corpus: every finite multicovered space of a given size,
up to relabelling of points and reordering of covers and members.
"""
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import RangeError
from .commands import run
from .loader import canonical_json, fingerprint
from .schemas import CorpusSettings, EngineSettings, GameSpec, Report, RunSpec, Verdict

logger = logging.getLogger(__name__)

# A cover is a sorted tuple of member bitmasks over points 0..n-1.
CoverMasks = Tuple[int, ...]
Instance = Tuple[CoverMasks, ...]


@dataclass(frozen=True)
class CorpusSize:
    points: int
    covers: int
    members: int

    def check(self, limits: CorpusSettings) -> None:
        """
        Raises:
            RangeError: The size is outside the configured limits
        """
        if not 1 <= self.points <= limits.max_points:
            raise RangeError(f"Corpus needs 1 <= points <= {limits.max_points}, got {self.points}")
        if not 1 <= self.covers <= limits.max_covers:
            raise RangeError(f"Corpus needs 1 <= covers <= {limits.max_covers}, got {self.covers}")
        if not 1 <= self.members <= limits.max_members:
            raise RangeError(f"Corpus needs 1 <= members <= {limits.max_members}, got {self.members}")


def _permute(mask: int, perm: Sequence[int]) -> int:
    result = 0
    for bit, target in enumerate(perm):
        if mask >> bit & 1:
            result |= 1 << target
    return result


def canonical_instance(instance: Instance, points: int) -> Instance:
    """Smallest relabelling of an instance, covers and members sorted."""
    best = None
    for perm in permutations(range(points)):
        image = tuple(sorted(tuple(sorted(_permute(m, perm) for m in cover)) for cover in instance))
        if best is None or image < best:
            best = image
    return best


def all_covers(points: int, members: int) -> List[CoverMasks]:
    """Sets of at most ``members`` distinct nonempty subsets whose union is everything."""
    full = (1 << points) - 1
    subsets = range(1, full + 1)
    covers = []
    for size in range(1, members + 1):
        for chosen in combinations(subsets, size):
            union = 0
            for mask in chosen:
                union |= mask
            if union == full:
                covers.append(chosen)
    return covers


def raw_count(size: CorpusSize) -> int:
    """Multicover candidates enumerated before deduplication."""
    subsets = (1 << size.points) - 1
    covers = sum(comb(subsets, k) for k in range(1, size.members + 1))
    return comb(covers, size.covers)


def enumerate_instances(size: CorpusSize, limits: Optional[CorpusSettings] = None) -> List[Instance]:
    """
    Canonical instances of a size, in ascending canonical order.

    Multicovers use distinct covers; a repeated cover adds nothing to the games.

    Raises:
        RangeError: The size is outside the limits or the enumeration is too large
    """
    limits = limits or CorpusSettings()
    size.check(limits)
    estimate = raw_count(size)
    if estimate > limits.max_enumeration:
        raise RangeError(f"Corpus enumeration of {estimate} candidates exceeds {limits.max_enumeration}")
    started = time.monotonic()
    seen = set()
    for chosen in combinations(all_covers(size.points, size.members), size.covers):
        seen.add(canonical_instance(chosen, size.points))
    instances = sorted(seen)
    duration_ms = int((time.monotonic() - started) * 1000)
    logger.info(
        f"Enumerated {len(instances)} instances with {size.points} points, {size.covers} covers",
        extra={"duration_ms": duration_ms},
    )
    return instances


def instance_spec(instance: Instance, points: int) -> Dict:
    """Explicit space description of an instance."""
    return {
        "kind": "explicit",
        "name": "corpus",
        "points": list(range(points)),
        "covers": [
            [[p for p in range(points) if mask >> p & 1] for mask in cover]
            for cover in instance
        ],
    }


def sample_instances(instances: List[Instance], sample: Optional[int], seed: int) -> List[Instance]:
    if sample is None or sample >= len(instances):
        return instances
    chosen = random.Random(seed).sample(range(len(instances)), sample)
    return [instances[i] for i in sorted(chosen)]


def write_instances(specs: Sequence[Dict], output: str) -> List[str]:
    """One JSON file per instance, named by fingerprint."""
    directory = Path(output)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for spec in specs:
        name = f"{fingerprint(spec)[:16]}.json"
        with open(directory / name, 'w') as f:
            f.write(canonical_json(spec) + "\n")
        names.append(name)
    return names


def sweep(specs: Sequence[Dict], game: GameSpec, settings: EngineSettings) -> Dict[str, Report]:
    """Solve every instance on a thread pool; results keyed by instance fingerprint."""

    def solve_one(space: Dict) -> Tuple[str, Report]:
        spec = RunSpec(command="solve", space=space, game=game)
        return fingerprint(space), run(spec, settings)

    with ThreadPoolExecutor(max_workers=settings.corpus.workers) as pool:
        results = list(pool.map(solve_one, specs))
    return dict(sorted(results, key=lambda item: item[0]))


def generate(
    size: CorpusSize,
    settings: EngineSettings,
    game: Optional[GameSpec] = None,
    sample: Optional[int] = None,
    seed: int = 0,
    output: Optional[str] = None,
) -> Report:
    """
    Enumerate a corpus, optionally write it out and sweep a game over it.

    Args:
        size: Points, covers and members per cover
        settings: Engine settings (corpus limits, worker count)
        game: Game solved on every instance when given
        sample: Keep this many instances, chosen with ``seed``
        output: Directory for instance files

    Returns:
        Report with the instance fingerprints and, for sweeps, each winner
    """
    if game is not None and game.horizon > settings.corpus.max_horizon:
        raise RangeError(f"Corpus sweeps need horizon <= {settings.corpus.max_horizon}, got {game.horizon}")
    instances = sample_instances(enumerate_instances(size, settings.corpus), sample, seed)
    specs = [instance_spec(instance, size.points) for instance in instances]
    fingerprints = [fingerprint(spec) for spec in specs]
    details: Dict = {
        "size": {"points": size.points, "covers": size.covers, "members": size.members},
        "instances": len(specs),
        "fingerprints": fingerprints,
    }
    if output is not None:
        details["files"] = write_instances(specs, output)
    verdict = Verdict.YES
    if game is not None:
        reports = sweep(specs, game, settings)
        details["winners"] = {key: report.verdict.value for key, report in reports.items()}
        unknown = [key for key, report in reports.items() if report.verdict is Verdict.UNKNOWN]
        if unknown:
            logger.error(f"{len(unknown)} instances failed the policy self-check")
            verdict = Verdict.UNKNOWN
    return Report(command="corpus", verdict=verdict, fingerprint=fingerprint(fingerprints), details=details)
