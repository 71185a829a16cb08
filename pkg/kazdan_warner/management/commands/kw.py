from torus_geometry.blob import encode_field, real_field
from torus_geometry.grid import make_grid
from kazdan_warner.problem import manufactured_problem
from kazdan_warner.serializers import KWProblemSerializer, problem_record, solution_record
from kazdan_warner.solver import solve_kw
from runs.command import VortexCommand, read_json, usage_error


class Command(VortexCommand):
    help = 'Solve Laplacian(f) + P e^{2f} - Q e^{-2f} = w on the torus'

    def add_run_arguments(self, parser):
        parser.add_argument('action', choices=['solve', 'manufactured'])
        parser.add_argument('--problem', type=str, help='Problem JSON (n and base64 blobs of P, Q, w)')
        parser.add_argument('--tol', type=float, default=1e-10, help='Sup-norm residual target')
        parser.add_argument('--out', type=str, help='Output JSON path (stdout if omitted)')
        parser.add_argument('--binary', type=str, help='Also write f as a raw field blob to this path')
        parser.add_argument('--n', type=int, default=64, help='Grid size for the manufactured problem')

    def run(self, **options):
        if options['action'] == 'manufactured':
            problem, _ = manufactured_problem(make_grid(options['n']))
            self.grid_size = problem.grid.n
            self.provenance = {'problem': 'manufactured f* = 0.3 cos(2 pi x) cos(2 pi y)'}
            self.emit_json(problem_record(problem), options['out'])
            return

        if not options['problem']:
            raise usage_error("kw solve needs --problem")
        serializer = KWProblemSerializer(data=read_json(options['problem']))
        if not serializer.is_valid():
            raise usage_error(f"invalid problem file: {serializer.errors}")
        problem = serializer.to_problem()
        tol = options['tol']
        self.grid_size = problem.grid.n
        self.tolerances = {'tol': tol}

        solution = solve_kw(problem, tol)
        self.provenance = {'f': 'computed'}
        self.emit_json(solution_record(solution, tol), options['out'])
        if options['binary']:
            with open(options['binary'], 'wb') as f:
                f.write(encode_field(real_field(solution.f)))
            self.register_artifact(options['binary'])
        self.stderr.write(
            f"residual {solution.residual_linf:.3e} after {solution.newton_iters} Newton passes"
        )
