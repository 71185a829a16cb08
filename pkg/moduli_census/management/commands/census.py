from pathlib import Path

from runs.command import VortexCommand, usage_error
from moduli_census.bundles import COMPUTED, TRANSCRIBED
from moduli_census.classify import classify, involution_check, theorem_items, theta_divisor_summary
from moduli_census.serializers import BundleSpecSerializer, ModuliDescriptionSerializer
from moduli_census.tables import CensusRow, census_table, write_census_csv


class Command(VortexCommand):
    help = 'Exact census of the holomorphic moduli spaces for genus 0, 1 and 2'

    def add_run_arguments(self, parser):
        parser.add_argument('action', nargs='?', default='classify',
                            choices=['classify', 'table', 'theta', 'involution'])
        parser.add_argument('--genus', type=int, help='Genus of the surface (0, 1 or 2)')
        parser.add_argument('--kind', type=str, default='split',
                            help="Bundle kind: split, atiyah_E0 or stable_generic")
        parser.add_argument('--d', type=int, help='Degree of L')
        parser.add_argument('--sign', type=int, default=-1, help='Sign of d - tau (-1, 0 or 1)')
        parser.add_argument('--param', type=int, default=0, help='k on genus 0, deg A on genus 1')
        parser.add_argument('--class-flag', type=str, default='generic',
                            help='generic, two_torsion, trivial or nongeneric')
        parser.add_argument('--format', type=str, default='json', choices=['json', 'csv'])
        parser.add_argument('--out', type=str, help='Output file (stdout if omitted)')

    def build_spec(self, options):
        if options['genus'] is None or options['d'] is None:
            raise usage_error(f"census {options['action']} needs --genus and --d")
        serializer = BundleSpecSerializer(data={
            'genus': options['genus'],
            'kind': options['kind'],
            'd': options['d'],
            'sign': options['sign'],
            'param': options['param'],
            'class_flag': options['class_flag'],
        })
        if not serializer.is_valid():
            raise usage_error(f"invalid bundle: {serializer.errors}")
        return serializer.to_spec()

    def emit_csv(self, rows, out):
        text = write_census_csv(rows)
        if out:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding='utf-8')
            self.register_artifact(out)
        else:
            self.stdout.write(text, ending='')

    def run(self, **options):
        action = options['action']
        if action == 'table':
            rows = census_table()
            self.provenance = {'genus_1': COMPUTED, 'genus_2': TRANSCRIBED}
            self.emit_csv(rows, options['out'])
            return

        spec = self.build_spec(options)
        if action == 'theta':
            self.provenance = {'theta': TRANSCRIBED}
            self.emit_json(theta_divisor_summary(spec), options['out'])
            return
        if action == 'involution':
            self.emit_json({
                'spec': BundleSpecSerializer(spec).data,
                'involution_holds': involution_check(spec),
            }, options['out'])
            return

        desc = classify(spec)
        self.provenance = {'classification': desc.provenance}
        if options['format'] == 'csv':
            self.emit_csv([CensusRow(spec, desc, tuple(theorem_items(spec.genus, spec.d)))], options['out'])
        else:
            self.emit_json({
                'spec': BundleSpecSerializer(spec).data,
                'description': ModuliDescriptionSerializer(desc).data,
            }, options['out'])
