import io
import json
from dataclasses import replace

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from core.exceptions import (
    NotDefinedError,
    PreconditionError,
    TableMismatchError,
    UnclassifiedError,
    UnsupportedGenusError,
)
from moduli_census import classify as classify_module
from moduli_census.bundles import UNDEFINED_WALL, BundleSpec, points
from moduli_census.classify import (
    GENUS_ZERO_BASE_NOTE,
    classify,
    derive_genus_one,
    dimension_law,
    genus_one_table,
    involution_check,
    strata,
    sw_count,
    theorem_items,
    theta_divisor_summary,
)
from moduli_census.tables import census_table, golden_text, write_census_csv

DEGREES = range(-4, 5)

CENSUS_BUNDLES = [
    dict(genus=0, kind='split', param=0),
    dict(genus=0, kind='split', param=1),
    dict(genus=0, kind='split', param=3),
    dict(genus=1, kind='split', param=0, class_flag='generic'),
    dict(genus=1, kind='split', param=0, class_flag='two_torsion'),
    dict(genus=1, kind='split', param=0, class_flag='trivial'),
    dict(genus=1, kind='split', param=1, class_flag='generic'),
    dict(genus=1, kind='split', param=2, class_flag='generic'),
    dict(genus=1, kind='atiyah_E0'),
    dict(genus=2, kind='stable_generic'),
]

GENERIC_BUNDLES = [
    dict(genus=1, kind='split', param=0, class_flag='generic'),
    dict(genus=2, kind='stable_generic'),
]


def census_grid(bundles=CENSUS_BUNDLES, signs=(-1, 1)):
    """Every classifiable (spec, description) pair over the test grid."""
    for bundle in bundles:
        for d in DEGREES:
            for sign in signs:
                spec = BundleSpec(d=d, sign=sign, **bundle)
                try:
                    yield spec, classify(spec)
                except UnclassifiedError:
                    continue


@pytest.mark.unit
class TestBundleSpec:

    def test_unsupported_genus(self):
        with pytest.raises(UnsupportedGenusError):
            BundleSpec(genus=3, kind='stable_generic', d=0)

    @pytest.mark.parametrize('genus,kind', [(0, 'atiyah_E0'), (2, 'atiyah_E0'), (1, 'stable_generic')])
    def test_kind_needs_matching_genus(self, genus, kind):
        with pytest.raises(PreconditionError):
            BundleSpec(genus=genus, kind=kind, d=0)

    def test_bad_sign(self):
        with pytest.raises(PreconditionError):
            BundleSpec(genus=1, kind='split', d=0, sign=2)

    def test_effective_degree_flips_with_chamber(self):
        assert BundleSpec(genus=1, kind='split', d=2, sign=-1).effective_degree == 2
        assert BundleSpec(genus=1, kind='split', d=2, sign=1).effective_degree == -2

    def test_labels(self):
        assert BundleSpec(genus=0, kind='split', d=1, param=3).label == 'split_k3'
        assert BundleSpec(genus=1, kind='split', d=0).label == 'split_m0_generic'
        assert BundleSpec(genus=2, kind='stable_generic', d=0).label == 'stable_generic'


@pytest.mark.unit
class TestClassify:

    def test_genus_zero_trivial_bundle(self):
        desc = classify(BundleSpec(genus=0, kind='split', d=1, param=0))
        assert desc.label == 'projective_space(1)'
        assert desc.euler == 2
        assert desc.compact
        assert desc.sw == UNDEFINED_WALL

    def test_genus_one_two_points(self):
        desc = classify(BundleSpec(genus=1, kind='split', d=0))
        assert desc.label == 'points(2)'
        assert (desc.euler, desc.sw) == (2, 2)

    def test_genus_two_curve(self):
        desc = classify(BundleSpec(genus=2, kind='stable_generic', d=0))
        assert desc.label == 'curve(5)'
        assert (desc.dimC, desc.euler, desc.sw) == (1, -8, 8)
        assert desc.provenance == 'paper-transcribed'

    def test_genus_one_projective_bundle(self):
        desc = classify(BundleSpec(genus=1, kind='split', d=2))
        assert desc.label == 'projective_bundle(CP^3 over J^2)'
        assert (desc.dimC, desc.euler, desc.sw) == (4, 0, 0)
        assert desc.provenance == 'computed'

    def test_genus_zero_noncompact(self):
        desc = classify(BundleSpec(genus=0, kind='split', d=1, param=3))
        assert desc.status == 'noncompact_fibration'
        assert (desc.base_dimC, desc.fiber_dimC) == (3, 2)
        # chi(CP^(k+d-1)) chi(CP^(k-d)) = 4 * 3
        assert desc.euler == 12
        assert desc.euler_of == 'compactification'
        assert desc.fueter_present and not desc.compact
        assert GENUS_ZERO_BASE_NOTE in desc.notes

    def test_atiyah_bundle(self):
        desc = classify(BundleSpec(genus=1, kind='atiyah_E0', d=0))
        assert desc.label == 'affine_line_with_CP1_compactification'
        assert not desc.compact
        assert desc.fueter_present
        assert desc.euler == 2

    @pytest.mark.parametrize('flag', ['two_torsion', 'trivial'])
    def test_nongeneric_degree_zero_is_noncompact(self, flag):
        desc = classify(BundleSpec(genus=1, kind='split', d=0, class_flag=flag))
        assert desc.label == 'noncompact_fibration(base_dimC=1 fiber_dimC=1)'
        assert desc.euler == 4
        assert desc.fueter_present

    def test_positive_degree_summand(self):
        assert classify(BundleSpec(genus=1, kind='split', d=0, param=1)).label == \
            'noncompact_fibration(base_dimC=1 fiber_dimC=1)'
        desc = classify(BundleSpec(genus=1, kind='split', d=-1, param=1))
        assert desc.label == 'noncompact_fibration(base_dimC=0 fiber_dimC=2)'
        assert desc.euler == 3

    def test_jumping_stratum_is_unclassified(self):
        with pytest.raises(UnclassifiedError):
            classify(BundleSpec(genus=1, kind='split', d=1, param=1))

    def test_wall_is_unclassified(self):
        with pytest.raises(UnclassifiedError):
            classify(BundleSpec(genus=1, kind='split', d=0, sign=0))

    def test_nongeneric_genus_two_is_unclassified(self):
        with pytest.raises(UnclassifiedError):
            classify(BundleSpec(genus=2, kind='stable_generic', d=0, class_flag='nongeneric'))
        with pytest.raises(UnclassifiedError):
            classify(BundleSpec(genus=2, kind='split', d=0))

    def test_classification_is_deterministic(self):
        spec = BundleSpec(genus=1, kind='split', d=3)
        assert classify(spec) == classify(spec)


@pytest.mark.unit
class TestGenusOneDerivation:

    @pytest.mark.parametrize('d', DEGREES)
    def test_derivation_matches_table(self, d):
        spec = BundleSpec(genus=1, kind='split', d=d)
        assert derive_genus_one(spec).shape() == genus_one_table(d).shape()

    def test_special_strata_at_degree_zero(self):
        layers = strata(BundleSpec(genus=1, kind='split', d=0))
        assert layers['generic'][0].is_empty
        assert [s.kind for s in layers['special']] == ['projective', 'projective']
        assert all(s.fiber_dimC == 0 for s in layers['special'])

    def test_two_torsion_has_one_special_class(self):
        layers = strata(BundleSpec(genus=1, kind='split', d=0, class_flag='two_torsion'))
        assert len(layers['special']) == 1

    def test_table_disagreement_raises(self, monkeypatch):
        monkeypatch.setattr('moduli_census.classify.genus_one_table', lambda d: points(3))
        with pytest.raises(TableMismatchError):
            classify(BundleSpec(genus=1, kind='split', d=0))


@pytest.mark.unit
class TestCensusLaws:

    def test_dimension_law(self):
        checked = 0
        for spec, desc in census_grid():
            if desc.compact and not desc.is_empty:
                assert desc.dimC == dimension_law(spec), (spec, desc.label)
                checked += 1
        assert checked > 20

    @pytest.mark.parametrize('bundle', GENERIC_BUNDLES + [dict(genus=0, kind='split', param=0)])
    def test_emptiness_law(self, bundle):
        genus = bundle['genus']
        for d in DEGREES:
            if d < (1 - genus) / 2:
                assert classify(BundleSpec(d=d, **bundle)).is_empty

    def test_sign_law(self):
        for spec, desc in census_grid():
            if spec.genus >= 1 and desc.compact:
                assert desc.sw == (-1) ** (spec.genus - 1) * desc.euler

    def test_fueter_iff_noncompact(self):
        for _, desc in census_grid():
            assert desc.fueter_present == (not desc.compact)

    @pytest.mark.parametrize('bundle', GENERIC_BUNDLES)
    @pytest.mark.parametrize('d', DEGREES)
    def test_involution(self, bundle, d):
        assert involution_check(BundleSpec(d=d, **bundle))

    def test_involution_detects_euler_mismatch(self, monkeypatch):
        exact = classify_module.classify

        def skewed(spec):
            desc = exact(spec)
            return replace(desc, euler=desc.euler + 1) if spec.d < 0 else desc

        monkeypatch.setattr(classify_module, 'classify', skewed)
        spec = BundleSpec(d=1, **GENERIC_BUNDLES[0])
        assert not involution_check(spec)
        assert involution_check(spec.with_degree(0))

    def test_involution_needs_generic_bundle(self):
        with pytest.raises(PreconditionError):
            involution_check(BundleSpec(genus=1, kind='split', d=0, param=1))
        with pytest.raises(PreconditionError):
            involution_check(BundleSpec(genus=0, kind='split', d=1))


@pytest.mark.unit
class TestSwCount:

    @pytest.mark.parametrize('genus,d,expected', [(1, 0, 2), (2, 0, 8), (1, 2, 0), (2, -1, 0)])
    def test_values(self, genus, d, expected):
        kind = 'split' if genus == 1 else 'stable_generic'
        desc = classify(BundleSpec(genus=genus, kind=kind, d=d))
        assert sw_count(desc, genus) == expected

    def test_genus_zero_not_defined(self):
        desc = classify(BundleSpec(genus=0, kind='split', d=1))
        with pytest.raises(NotDefinedError):
            sw_count(desc, 0)

    def test_noncompact_not_defined(self):
        desc = classify(BundleSpec(genus=1, kind='atiyah_E0', d=0))
        with pytest.raises(NotDefinedError):
            sw_count(desc, 1)


@pytest.mark.unit
class TestThetaSummary:

    def test_generic(self):
        summary = theta_divisor_summary(BundleSpec(genus=2, kind='stable_generic', d=0))
        assert summary['quotient_curve_genus'] == 3
        assert summary['moduli_curve_genus'] == 5
        assert summary['singular_points_avoided'] == 16
        assert summary['compact'] is True
        assert (summary['euler'], summary['sw']) == (-8, 8)

    def test_nongeneric_names_fueter_loci(self):
        summary = theta_divisor_summary(
            BundleSpec(genus=2, kind='stable_generic', d=0, class_flag='nongeneric')
        )
        assert summary['compact'] is False
        assert len(summary['fueter_loci']) == 2
        assert any('Kummer' in locus for locus in summary['fueter_loci'])

    def test_needs_degree_zero(self):
        with pytest.raises(PreconditionError, match='d=0 construction'):
            theta_divisor_summary(BundleSpec(genus=2, kind='stable_generic', d=1))

    def test_needs_genus_two(self):
        with pytest.raises(PreconditionError):
            theta_divisor_summary(BundleSpec(genus=1, kind='split', d=0))


@pytest.mark.unit
class TestCensusTable:

    @pytest.mark.parametrize('genus,d,expected', [
        (1, -1, [1]),
        (1, 0, [2, 4]),
        (1, 1, [2, 3]),
        (2, -1, [1]),
        (2, 0, [2, 5]),
        (2, 1, [2, 3]),
    ])
    def test_theorem_items(self, genus, d, expected):
        assert theorem_items(genus, d) == expected

    def test_matches_golden_file(self):
        assert write_census_csv(census_table()) == golden_text()

    def test_theorem_rows(self):
        rows = {(r.spec.genus, r.spec.d): r.description for r in census_table()}
        assert rows[(1, -2)].is_empty and rows[(2, -1)].is_empty
        assert rows[(1, 0)].sw == 2
        assert rows[(2, 0)].sw == 8
        for genus in (1, 2):
            for d in range(max(genus - 1, 1), 4):
                assert rows[(genus, d)].status == 'projective_bundle'
                assert rows[(genus, d)].sw == 0


@pytest.mark.integration
class TestCensusCommand:

    def test_table_is_golden(self):
        stdout = io.StringIO()
        call_command('census', 'table', stdout=stdout)
        assert stdout.getvalue() == golden_text()

    def test_table_to_file_with_manifest(self, tmp_path):
        out, manifest = tmp_path / 'census.csv', tmp_path / 'manifest.json'
        call_command('census', 'table', '--out', str(out), '--manifest', str(manifest))
        assert out.read_text(encoding='utf-8') == golden_text()
        data = json.loads(manifest.read_text())
        assert data['command'] == 'census'
        assert data['exit_code'] == 0
        assert str(out) in data['artifact_hashes']

    def test_classify_json(self):
        stdout = io.StringIO()
        call_command('census', '--genus', '1', '--d', '0', stdout=stdout)
        data = json.loads(stdout.getvalue())
        assert data['description']['status'] == 'points(2)'
        assert data['description']['sw'] == 2

    def test_classify_csv(self):
        stdout = io.StringIO()
        call_command('census', '--genus', '2', '--kind', 'stable_generic', '--d', '0',
                     '--format', 'csv', stdout=stdout)
        lines = stdout.getvalue().splitlines()
        assert lines[1] == '2;5,2,stable_generic,0,-1,curve(5),1,-8,8,true,false,paper-transcribed'

    def test_theta(self):
        stdout = io.StringIO()
        call_command('census', 'theta', '--genus', '2', '--kind', 'stable_generic', '--d', '0', stdout=stdout)
        assert json.loads(stdout.getvalue())['moduli_curve_genus'] == 5

    def test_involution(self):
        stdout = io.StringIO()
        call_command('census', 'involution', '--genus', '1', '--d', '2', stdout=stdout)
        assert json.loads(stdout.getvalue())['involution_holds'] is True

    def test_missing_degree_is_a_usage_error(self):
        with pytest.raises(CommandError) as excinfo:
            call_command('census', '--genus', '1')
        assert excinfo.value.returncode == 2

    def test_unknown_genus_is_a_usage_error(self):
        with pytest.raises(CommandError) as excinfo:
            call_command('census', '--genus', '5', '--d', '0')
        assert excinfo.value.returncode == 2

    def test_unclassified_exits_one(self):
        with pytest.raises(CommandError) as excinfo:
            call_command('census', '--genus', '1', '--d', '0', '--sign', '0')
        assert excinfo.value.returncode == 1
        assert 'UnclassifiedError' in str(excinfo.value)
