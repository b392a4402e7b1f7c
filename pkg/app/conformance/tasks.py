import logging
from dataclasses import replace

from celery import group, shared_task

from engine.serializers import OutcomeSerializer

from .differential import diff_run, runners_for
from .generator import derive_seed, gen_program
from .models import FuzzCase, FuzzRun

logger = logging.getLogger(__name__)


@shared_task
def diff_case(run_id, index):
    """Generate case `index` of a fuzz run, diff it and record the verdict."""
    run = FuzzRun.objects.get(pk=run_id)
    params = run.gen_params()
    seed = derive_seed(params.seed, index)
    _, program = gen_program(replace(params, seed=seed))

    verdict = diff_run(
        program,
        budget=run.step_limit,
        runners=runners_for(run.levels, run.mutant or None),
        overhead_factor=run.overhead_factor,
    )
    FuzzCase.objects.create(
        run=run,
        index=index,
        seed=seed,
        source=verdict.source,
        data=verdict.data,
        verdict=verdict.verdict,
        divergence=verdict.divergence,
        skip_reason=verdict.skip_reason or '',
        outcomes={name: OutcomeSerializer(outcome).data for name, outcome in verdict.outcomes.items()},
    )
    if not verdict.agreed:
        logger.info(f"Run {run_id} case {index}: {verdict.verdict}")
    return verdict.verdict


def dispatch_run(run):
    """Fan every case of `run` out over the worker pool and wait for all of them."""
    if run.cases == 0:
        return run
    logger.info(f"Dispatching {run.cases} cases of fuzz run {run.pk}")
    result = group(diff_case.s(run.pk, index) for index in range(run.cases)).apply_async()
    if not result.ready():
        result.get()
    return run
