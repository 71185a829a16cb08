from runs.command import VortexCommand, read_json, usage_error
from vortex_correspondence.hitchin_kobayashi import hk_solve
from vortex_correspondence.serializers import TripleSpecSerializer, VortexStateSerializer, residual_table


class Command(VortexCommand):
    help = 'Solve the vortex equations in the complex gauge orbit of a holomorphic triple'

    def add_run_arguments(self, parser):
        parser.add_argument('action', choices=['hk'])
        parser.add_argument('--triple', type=str, required=True, help='Triple JSON file')
        parser.add_argument('--tau', type=float, required=True, help='Vortex parameter tau')
        parser.add_argument('--tol', type=float, default=1e-8, help='Residual target')
        parser.add_argument('--out', type=str, help='Output state JSON (stdout if omitted)')

    def run(self, **options):
        serializer = TripleSpecSerializer(data=read_json(options['triple']))
        if not serializer.is_valid():
            raise usage_error(f"invalid triple file: {serializer.errors}")
        triple = serializer.to_triple()
        self.grid_size = triple.grid.n
        self.tolerances = {'tol': options['tol']}

        state = hk_solve(triple, options['tau'], options['tol'])
        self.provenance = {'state': 'computed', 'floors': 'two-grid estimate'}
        self.emit_json(VortexStateSerializer(state).data, options['out'])
        for name, value, bound in residual_table(state):
            self.stderr.write(f"{name:<12} {value:.3e}  (bound {bound:.3e})")
