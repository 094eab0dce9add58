"""Run suite cases inline or across worker processes."""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from critval.core.config import settings
from critval.schemas.instance import CheckOutcome
from critval.workers.tasks import CaseTask, run_case

logger = logging.getLogger(__name__)


def run_tasks(tasks: Sequence[CaseTask], workers: Optional[int] = None) -> List[CheckOutcome]:
    """Outcomes of every task, ordered by (check name, instance) whatever the schedule."""
    workers = workers or settings.WORKERS
    if workers <= 1 or len(tasks) <= 1:
        outcomes = [run_case(task) for task in tasks]
    else:
        logger.info(f"Running {len(tasks)} cases on {workers} workers")
        with ProcessPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(run_case, tasks, chunksize=1))
    return sorted(outcomes, key=lambda outcome: outcome.sort_key())
