from dolbeault.cohomology import DolbeaultProblem, h0
from dolbeault.divisors import fueter_search
from dolbeault.serializers import CohomologyReportSerializer, FueterReportSerializer
from runs.command import VortexCommand, usage_error
from torus_geometry.grid import make_grid


def parse_class(text):
    """'x,y' -> (float, float)."""
    try:
        x, y = (float(part) for part in text.split(','))
    except ValueError:
        raise usage_error(f"--class expects 'x,y', got {text!r}")
    return x, y


class Command(VortexCommand):
    help = 'Numerical Dolbeault cohomology of line bundles and split bundles on the torus'

    def add_run_arguments(self, parser):
        parser.add_argument('action', choices=['h0', 'fueter'])
        parser.add_argument('--degree', type=int, default=0, help='Degree of L')
        parser.add_argument('--class', dest='jacobian_class', type=str, default='0,0',
                            help="Jacobian class of L as 'x,y'")
        parser.add_argument('--n', type=int, default=32, help='Grid size (at least 16)')
        parser.add_argument('--split-m', type=int, help='Use E (x) L with E = M + M^-1 of this degree')
        parser.add_argument('--split-class', type=str, default='0,0', help="Jacobian class of M as 'x,y'")
        parser.add_argument('--rank-tol', type=float, help='Relative zero threshold for singular values')
        parser.add_argument('--json', action='store_true', help='Print the full report as JSON')
        parser.add_argument('--out', type=str, help='Write the JSON report to this path')

    def run(self, **options):
        jacobian_class = parse_class(options['jacobian_class'])
        if options['action'] == 'fueter':
            report = fueter_search(options['degree'], jacobian_class)
            data = FueterReportSerializer(report).data
            self.provenance = {'exists': 'exact divisor arithmetic'}
            self.emit_json(data, options['out'])
            return

        grid = make_grid(options['n'])
        self.grid_size = grid.n
        if options['split_m'] is None:
            problem = DolbeaultProblem.line_bundle(grid, options['degree'], jacobian_class)
        else:
            problem = DolbeaultProblem.for_split_bundle(
                grid, options['split_m'], parse_class(options['split_class']),
                options['degree'], jacobian_class,
            )
        report = h0(problem, options['rank_tol'])
        self.tolerances = {'rank_tol': report.rank_tol}
        self.provenance = {'h0': 'computed', 'h1': 'computed'}
        if options['json'] or options['out']:
            self.emit_json(CohomologyReportSerializer(report).data, options['out'])
        else:
            self.stdout.write(f"h0={report.h0} h1={report.h1} gap_ratio={report.gap_ratio:.3e}")
