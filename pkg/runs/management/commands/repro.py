from pathlib import Path

from django.core.management.base import CommandError

from runs.checks import REPRO_TARGETS, run_check
from runs.command import VortexCommand, usage_error
from runs.manifest import write_json
from runs.serializers import CheckResultSerializer


class Command(VortexCommand):
    help = 'Run the reproduction checks and report PASS or FAIL for each'

    def add_run_arguments(self, parser):
        parser.add_argument('target', choices=[*REPRO_TARGETS, 'all'])
        parser.add_argument('--out-dir', type=str, default='repro_output',
                            help='Where `all` writes summary.json and manifest.json')
        parser.add_argument('--samples', type=int, default=100_000,
                            help='Random spinor pairs for moment-identities')
        parser.add_argument('--jobs', type=int, default=1, help='Concurrent solves in limit-sweep')

    def handle(self, *args, **options):
        if options.get('target') == 'all' and not options.get('manifest'):
            options['manifest'] = str(Path(options['out_dir']) / 'manifest.json')
        return super().handle(*args, **options)

    def run(self, **options):
        if options['samples'] < 1 or options['jobs'] < 1:
            raise usage_error("--samples and --jobs must be positive")
        names = list(REPRO_TARGETS) if options['target'] == 'all' else [options['target']]

        results = []
        for name in names:
            result = run_check(name, samples=options['samples'], jobs=options['jobs'])
            style = self.style.SUCCESS if result.passed else self.style.ERROR
            self.stdout.write(style(f"{result.status} {name}: {result.detail} ({result.wall_time:.1f}s)"))
            results.append(result)

        self.provenance = {r.name: 'computed' for r in results}
        if options['target'] == 'all':
            summary = {
                'passed': all(r.passed for r in results),
                'checks': CheckResultSerializer(results, many=True).data,
            }
            path = write_json(Path(options['out_dir']) / 'summary.json', summary)
            self.register_artifact(path)

        failed = [r.name for r in results if not r.passed]
        if failed:
            raise CommandError(f"failed checks: {', '.join(failed)}", returncode=1)
