import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import CommandError

from conformance.differential import DISAGREE, runners_for
from conformance.generator import GenParams
from conformance.models import FuzzRun
from conformance.serializers import FuzzCaseSerializer
from conformance.tasks import dispatch_run
from console.base import EXIT_FAILURE, ProgramCommand
from lang.serializers import json_lines

logger = logging.getLogger(__name__)


class Command(ProgramCommand):
    help = "Generate seeded programs and diff them across engines and tower levels"

    def add_arguments(self, parser):
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--cases', type=int, default=100)
        parser.add_argument('--levels', type=int, default=1, choices=(0, 1))
        parser.add_argument('--max-tokens', type=int, default=64)
        parser.add_argument('--max-depth', type=int, default=8)
        parser.add_argument('--allow-nul', action='store_true', help='Let generated input contain NUL bytes')
        parser.add_argument('--step-limit', type=int, default=settings.DBFI['FUZZ_STEP_LIMIT'])
        parser.add_argument('--overhead', type=int, default=settings.DBFI['LEVEL_OVERHEAD_FACTOR'],
                            help='Level-1 budget multiplier')
        parser.add_argument('--report', help='Write case records here instead of stdout')
        parser.add_argument('--repro-dir', default=settings.DBFI['REPRO_DIR'])
        parser.add_argument('--mutant', help='Diff a deliberately broken engine against the reference')

    def handle(self, *args, **options):
        if options['cases'] < 0:
            raise CommandError("--cases must be >= 0", returncode=EXIT_FAILURE)
        if options['step_limit'] < 1 or options['overhead'] < 1:
            raise CommandError("--step-limit and --overhead must be positive", returncode=EXIT_FAILURE)
        try:
            params = GenParams(
                seed=options['seed'],
                max_tokens=options['max_tokens'],
                max_depth=options['max_depth'],
                allow_nul=options['allow_nul'],
            )
            runners_for(options['levels'], options['mutant'])
        except ValueError as exc:
            raise CommandError(str(exc), returncode=EXIT_FAILURE)

        run = FuzzRun.from_params(
            params,
            cases=options['cases'],
            levels=options['levels'],
            mutant=options['mutant'] or '',
            step_limit=options['step_limit'],
            overhead_factor=options['overhead'],
        )
        logger.info(f"Fuzz run {run.pk}: {run.cases} cases on {', '.join(runners_for(run.levels, run.mutant or None))}")
        dispatch_run(run)

        cases = run.results.select_related('run')
        records = json_lines(FuzzCaseSerializer(case).data for case in cases)
        if options['report'] is None:
            self.write_bytes(records)
        else:
            with open(options['report'], 'wb') as report_file:
                report_file.write(records)

        failing = cases.filter(verdict=DISAGREE)
        if failing.exists():
            repro_dir = Path(options['repro_dir'])
            repro_dir.mkdir(parents=True, exist_ok=True)
            for case in failing:
                (repro_dir / f"seed{run.seed}-case{case.index:05d}.b!").write_bytes(case.repro)

        counts = run.counts()
        self.stderr.write(
            f"{run.cases} cases: {counts['agree']} agree, {counts['disagree']} disagree, "
            f"{counts['skipped']} skipped"
        )
        if counts['disagree']:
            raise CommandError(f"{counts['disagree']} disagreements, repro files in {options['repro_dir']}",
                               returncode=EXIT_FAILURE)
