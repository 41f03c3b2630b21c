import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from itertools import islice
from typing import Optional

from config import (DEFAULT_COUNT, DEFAULT_GAP_BOUND, DEFAULT_SEARCH_BOUND, DEFAULT_TRIES,
                    VERSION, WORKERS)
from core_arith import ArithmeticDomainError, gcd
from pdf_generator import generate_envelope_pdf
from pell import continued_fraction_sqrt, fundamental_solution, pell_solutions
from power_search import PowerEquationQuery, scan_box, search_solutions, survey
from shift_square import ShiftInstance, SquareD, Witness, verify_witness, witness_family
from square_products import (enumerate_square_products, scan_square_products,
                             square_product_bound)
from storage import dumps, read_set_file, save_envelope
from syndetic import (SampleFormatError, Status, find_adjacent_pairs, find_geometric_pairs,
                      generate_all, generate_avoid_residue, generate_odd, generate_random,
                      hitting_failures, sample_from_elements, summarize_outcomes, verify_sample)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

GENERATORS = ('all', 'odd', 'avoid-residue', 'random')


@dataclass
class OutputEnvelope:
    name: str
    parameters: dict
    payload: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    error: Optional[str] = None
    version: str = VERSION

    @property
    def exit_code(self) -> int:
        return EXIT_DOMAIN if self.error else EXIT_OK

    def to_dict(self) -> dict:
        return {
            'command': {'name': self.name, 'parameters': self.parameters, 'version': self.version},
            'payload': self.payload,
            'warnings': self.warnings,
            'error': self.error,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'OutputEnvelope':
        meta = data['command']
        return cls(name=meta['name'], parameters=meta['parameters'], payload=data['payload'],
                   warnings=data['warnings'], error=data['error'], version=meta['version'])

    def render_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def parse(cls, text: str) -> 'OutputEnvelope':
        return cls.from_dict(json.loads(text))

    def render_text(self) -> str:
        icon = _ICONS.get(self.name, '📋')
        lines = [f"{icon} {self.name.upper()}  (v{self.version})"]
        params = ', '.join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        lines.append(f"Paramètres : {params}")
        if self.error:
            lines.append(f"❌ Erreur : {self.error}")
        for w in self.warnings:
            lines.append(f"⚠️ {w}")
        lines.append('')
        for key in sorted(self.payload):
            if key == 'rows':
                continue
            value = self.payload[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value, ensure_ascii=False, sort_keys=True)
            lines.append(f"  {key} : {value}")
        rows = self.payload.get('rows') or []
        if rows:
            columns = list(rows[0].keys())
            lines.append('')
            lines.append('\t'.join(columns))
            for row in rows:
                lines.append('\t'.join(_text_value(row.get(c)) for c in columns))
        elif 'rows' in self.payload:
            lines.append('')
            lines.append('Aucun résultat')
        return '\n'.join(lines)


_ICONS = {
    'pell': '🔢', 'family': '🧬', 'squares': '🟪', 'syndetic': '🧮',
    'search': '🔍', 'survey': '📊', 'verify': '✅',
}


def _text_value(value) -> str:
    if value is None:
        return '-'
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return str(value)


def parse_range(text: str) -> list:
    """'1..3' → [1, 2, 3] ; '2' → [2] ; '1,4,7' → [1, 4, 7]."""
    try:
        if '..' in text:
            lo, hi = (int(p) for p in text.split('..', 1))
            values = list(range(lo, hi + 1))
        else:
            values = [int(p) for p in text.split(',') if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"plage invalide '{text}' (attendu N, N..M ou N,M,…)")
    if not values:
        raise argparse.ArgumentTypeError(f"plage vide '{text}'")
    if min(values) < 1:
        raise argparse.ArgumentTypeError(f"plage '{text}' : valeurs ≥ 1 attendues")
    return values


def _certificate_for(a: int, k: int):
    for cert in enumerate_square_products(k):
        if cert.a == a:
            return cert
    return None


class Handlers:

    def pell(self, args) -> OutputEnvelope:
        """pell d --count N: fraction continue, solution fondamentale, N solutions."""
        logger.info(f"Commande pell d={args.d} count={args.count}")
        env = OutputEnvelope('pell', {'d': args.d, 'count': args.count})
        cf = continued_fraction_sqrt(args.d)
        fund = fundamental_solution(args.d)
        # la solution fondamentale est la dernière réduite affichée
        depth = cf.period_length * (2 if cf.period_length % 2 else 1)
        env.payload = {
            'd': args.d,
            'continued_fraction': {'a0': cf.a0, 'period': list(cf.period),
                                   'period_length': cf.period_length,
                                   'convergents': [[h, k] for h, k in cf.convergents(depth)]},
            'fundamental': {'u': fund.u, 'v': fund.v},
            'rows': [{'index': i, 'u': s.u, 'v': s.v}
                     for i, s in enumerate(islice(pell_solutions(args.d), args.count))],
        }
        return env

    def family(self, args) -> OutputEnvelope:
        """family --a A --k K --count N: témoins de a·x² + k = (a+k)·y²."""
        logger.info(f"Commande family a={args.a} k={args.k} count={args.count}")
        inst = ShiftInstance(args.a, args.k)
        if inst.is_square:
            cert = _certificate_for(args.a, args.k)
            details = {'a': inst.a, 'k': inst.k, 'd': inst.d, 'square': True,
                       'certificate': cert.as_dict() if cert else None}
            raise SquareD(f"a(a+k) = {inst.d} est un carré : pas de famille de Pell", details)
        env = OutputEnvelope('family', {'a': args.a, 'k': args.k, 'count': args.count})
        rows = []
        for i, w in enumerate(islice(witness_family(inst), args.count)):
            rows.append({
                'index': i, 'x': w.x, 'y': w.y,
                'lhs': inst.a * w.x * w.x + inst.k,
                'rhs': (inst.a + inst.k) * w.y * w.y,
                'holds': verify_witness(inst, w),
            })
        env.payload = {'a': inst.a, 'k': inst.k, 'd': inst.d, 'square': False, 'rows': rows}
        return env

    def squares(self, args) -> OutputEnvelope:
        """squares --k K [--oracle LIMIT]: les a avec a(a+k) carré."""
        logger.info(f"Commande squares k={args.k} oracle={args.oracle}")
        env = OutputEnvelope('squares', {'k': args.k, 'oracle': args.oracle})
        certs = enumerate_square_products(args.k)
        env.payload = {
            'k': args.k,
            'bound': square_product_bound(args.k),
            'count': len(certs),
            'rows': [c.as_dict() for c in certs],
        }
        if args.oracle is not None:
            scanned = scan_square_products(args.k, args.oracle)
            enumerated = [c.a for c in certs if c.a <= args.oracle]
            env.payload['oracle_limit'] = args.oracle
            env.payload['oracle_values'] = scanned
            env.payload['oracle_match'] = scanned == enumerated
            if scanned != enumerated:
                env.warnings.append("désaccord entre l'énumération et le balayage brute force")
        return env

    def _build_sample(self, args):
        if args.file:
            elements = read_set_file(args.file)
            if not elements:
                raise SampleFormatError(f"{args.file} : aucun élément")
            sample = sample_from_elements(elements, args.gap_bound, args.horizon)
            report = verify_sample(sample)
            if not report.valid:
                raise SampleFormatError(
                    f"{args.file} : échantillon invalide ({len(report.violations)} violation(s))",
                    {'violations': [{'kind': v.kind, 'position': v.position, 'detail': v.detail}
                                    for v in report.violations]},
                )
            return sample, f"file:{args.file}"
        name, *params = args.gen
        horizon = args.horizon
        if name == 'all':
            return generate_all(horizon), 'all'
        if name == 'odd':
            return generate_odd(horizon), 'odd'
        if name == 'avoid-residue':
            if len(params) != 2:
                raise ValueError("--gen avoid-residue attend RESIDU MODULE (ex. 0 3)")
            residue, modulus = (int(p) for p in params)
            return generate_avoid_residue(residue, modulus, horizon), f"avoid-residue {residue} mod {modulus}"
        if name == 'random':
            return generate_random(args.gap_bound, horizon, args.seed), f"random seed={args.seed}"
        raise ValueError(f"générateur inconnu '{name}' (choix : {', '.join(GENERATORS)})")

    def syndetic(self, args) -> OutputEnvelope:
        """syndetic --file F | --gen NOM … --k K: paires {a, a·x²} de l'échantillon."""
        if args.gen and args.horizon is None:
            args.horizon = 200
        logger.info(f"Commande syndetic source={args.file or args.gen} k={args.k} horizon={args.horizon}")
        params = {'file': args.file, 'gen': args.gen, 'k': args.k, 'horizon': args.horizon,
                  'gap_bound': args.gap_bound, 'seed': args.seed, 'tries': args.tries}
        env = OutputEnvelope('syndetic', params)
        sample, source = self._build_sample(args)
        report = verify_sample(sample)
        pairs = find_adjacent_pairs(sample, args.k)
        failures = hitting_failures(sample, args.k)
        outcomes = find_geometric_pairs(sample, args.k, tries=args.tries, workers=args.workers)
        env.payload = {
            'sample': {
                'source': source, 'size': len(sample.elements), 'gap_bound': sample.gap_bound,
                'horizon': sample.horizon, 'max_gap': report.stats.max_gap,
                'mean_gap': str(report.stats.mean_gap), 'valid': report.valid,
            },
            'adjacent_pairs': len(pairs),
            'hitting': not failures,
            'hitting_failures': failures[:20],
            'summary': summarize_outcomes(outcomes),
            'rows': [o.as_dict() for o in outcomes],
        }
        if failures:
            env.warnings.append(
                f"hypothèse {{a, a+{args.k}}} ∩ A ≠ ∅ fausse pour {len(failures)} valeur(s) de a")
        if not pairs:
            env.warnings.append(f"aucune paire {{a, a+{args.k}}} dans l'échantillon")
        if any(o.status is Status.HYPOTHESIS_VIOLATION for o in outcomes) and not failures:
            env.warnings.append("HypothesisViolation alors que l'hypothèse est vérifiée")
        return env

    def _query(self, args, a, k, ell) -> PowerEquationQuery:
        return PowerEquationQuery(a=a, k=k, ell=ell, m=args.m, n=args.n,
                                  x_bound=args.x_bound or args.bound,
                                  y_bound=args.y_bound or args.bound, min_xy=args.min_xy)

    def _domain_warning(self, env, min_xy):
        if min_xy == 1:
            env.warnings.append("domaine par défaut x, y ≥ 1 (--min-xy 2 pour x, y ≥ 2)")

    def search(self, args) -> OutputEnvelope:
        """search --a --k --ell --m --n --bound: balayage exhaustif d'une boîte."""
        q = self._query(args, args.a, args.k, args.ell)
        logger.info(f"Commande search {q}")
        params = {'a': q.a, 'k': q.k, 'ell': q.ell, 'm': q.m, 'n': q.n,
                  'x_bound': q.x_bound, 'y_bound': q.y_bound, 'min_xy': q.min_xy,
                  'oracle': args.oracle}
        env = OutputEnvelope('search', params)
        result = search_solutions(q, workers=args.workers)
        env.payload = {
            'gcd': gcd(q.a, q.ell),
            'obstructed': result.obstructed,
            'exhausted': result.exhausted,
            'domain': f"x, y >= {q.min_xy}",
            'count': len(result.solutions),
            'rows': [{'x': x, 'y': y} for x, y in result.solutions],
        }
        self._domain_warning(env, q.min_xy)
        if result.obstructed:
            env.warnings.append(f"k={q.k} non divisible par gcd(a, ell)={gcd(q.a, q.ell)} : aucune solution")
        if args.oracle:
            oracle = scan_box(q)
            env.payload['oracle_match'] = oracle == list(result.solutions)
            if not env.payload['oracle_match']:
                env.warnings.append("désaccord avec la double boucle de contrôle")
        return env

    def survey(self, args) -> OutputEnvelope:
        """survey --a R --k R --ell R: nombre de solutions par cellule."""
        logger.info(f"Commande survey a={args.a} k={args.k} ell={args.ell}")
        x_bound = args.x_bound or args.bound
        y_bound = args.y_bound or args.bound
        params = {'a': args.a, 'k': args.k, 'ell': args.ell, 'm': args.m, 'n': args.n,
                  'x_bound': x_bound, 'y_bound': y_bound, 'min_xy': args.min_xy,
                  'distinct_shifts': args.distinct_shifts}
        env = OutputEnvelope('survey', params)
        rows = survey(args.a, args.k, args.ell, m=args.m, n=args.n, x_bound=x_bound,
                      y_bound=y_bound, min_xy=args.min_xy, workers=args.workers,
                      distinct_shifts=args.distinct_shifts, progress=args.progress)
        env.payload = {
            'cells': len(rows),
            'obstructed_cells': sum(1 for r in rows if r.obstructed),
            'cells_with_solutions': sum(1 for r in rows if r.count),
            'domain': f"x, y >= {args.min_xy}",
            'rows': [r.as_dict() for r in rows],
        }
        self._domain_warning(env, args.min_xy)
        return env

    def verify(self, args) -> OutputEnvelope:
        """verify --a --k --x --y: contrôle d'un couple quelconque."""
        logger.info(f"Commande verify a={args.a} k={args.k} x={args.x} y={args.y}")
        inst = ShiftInstance(args.a, args.k)
        w = Witness(args.x, args.y)
        env = OutputEnvelope('verify', {'a': args.a, 'k': args.k, 'x': args.x, 'y': args.y})
        env.payload = {
            'lhs': inst.a * w.x * w.x + inst.k,
            'rhs': (inst.a + inst.k) * w.y * w.y,
            'holds': verify_witness(inst, w),
        }
        return env


handlers = Handlers()


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"entier attendu, reçu '{text}'")
    if value < 1:
        raise argparse.ArgumentTypeError(f"entier ≥ 1 attendu, reçu {value}")
    return value


def setup_cli() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('text', 'json'), default='text',
                        help="sortie lisible (text) ou structurée (json)")
    common.add_argument('--pdf', metavar='PATH', default=None, help="rapport PDF de la sortie")
    common.add_argument('--save', action='store_true', help="enregistre l'enveloppe JSON dans DATA_DIR")

    parser = argparse.ArgumentParser(
        prog='pellshift',
        description="Familles de Pell pour a·x² + k = (a+k)·y², carrés a(a+k), "
                    "paires géométriques dans les ensembles syndétiques.")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('pell', parents=[common], help="équation u² − d·v² = 1")
    p.add_argument('d', type=_positive)
    p.add_argument('--count', type=_positive, default=DEFAULT_COUNT)
    p.set_defaults(handler=handlers.pell)

    p = sub.add_parser('family', parents=[common], help="témoins de a·x² + k = (a+k)·y²")
    p.add_argument('--a', type=_positive, required=True)
    p.add_argument('--k', type=_positive, required=True)
    p.add_argument('--count', type=_positive, default=DEFAULT_COUNT)
    p.set_defaults(handler=handlers.family)

    p = sub.add_parser('squares', parents=[common], help="a > 0 avec a(a+k) carré")
    p.add_argument('--k', type=_positive, required=True)
    p.add_argument('--oracle', type=_positive, default=None, metavar='LIMIT')
    p.set_defaults(handler=handlers.squares)

    p = sub.add_parser('syndetic', parents=[common], help="paires {a, a·x²} dans un échantillon")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('--file', default=None)
    source.add_argument('--gen', nargs='+', default=None, metavar='NOM',
                        help=f"générateur : {', '.join(GENERATORS)} (avoid-residue RESIDU MODULE)")
    p.add_argument('--k', type=_positive, default=1)
    p.add_argument('--horizon', type=_positive, default=None)
    p.add_argument('--gap-bound', type=_positive, default=DEFAULT_GAP_BOUND)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--tries', type=_positive, default=DEFAULT_TRIES)
    p.add_argument('--workers', type=_positive, default=WORKERS)
    p.set_defaults(handler=handlers.syndetic)

    for name, helptext in (('search', "balayage de a·x^m + k = (a+ell)·y^n"),
                           ('survey', "tableau de comptage sur une grille (a, k, ell)")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        value_type = _positive if name == 'search' else parse_range
        p.add_argument('--a', type=value_type, required=True)
        p.add_argument('--k', type=value_type, required=True)
        p.add_argument('--ell', type=value_type, required=True)
        p.add_argument('--m', type=int, default=2)
        p.add_argument('--n', type=int, default=2)
        p.add_argument('--bound', type=_positive, default=DEFAULT_SEARCH_BOUND)
        p.add_argument('--x-bound', type=_positive, default=None)
        p.add_argument('--y-bound', type=_positive, default=None)
        p.add_argument('--min-xy', type=int, choices=(1, 2), default=1)
        p.add_argument('--workers', type=_positive, default=WORKERS)
        if name == 'search':
            p.add_argument('--oracle', action='store_true', help="contrôle par double boucle")
            p.set_defaults(handler=handlers.search)
        else:
            p.add_argument('--distinct-shifts', action='store_true', help="seulement k ≠ ell")
            p.add_argument('--progress', action='store_true', help="barre de progression (stderr)")
            p.set_defaults(handler=handlers.survey)

    p = sub.add_parser('verify', parents=[common], help="contrôle de a·x² + k = (a+k)·y²")
    for flag in ('--a', '--k', '--x', '--y'):
        p.add_argument(flag, type=_positive, required=True)
    p.set_defaults(handler=handlers.verify)

    return parser


def _emit(env: OutputEnvelope, args, out):
    text = env.render_json() if args.format == 'json' else env.render_text()
    out.write(text)
    out.write('\n')
    if args.save:
        save_envelope(env.to_dict())
    if args.pdf:
        generate_envelope_pdf(env.to_dict(), args.pdf)


_NON_PARAMETERS = {'handler', 'command', 'format', 'pdf', 'save', 'workers', 'progress'}


def _parameters(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _NON_PARAMETERS}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = setup_cli()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        env = args.handler(args)
    except ArithmeticDomainError as e:
        logger.error(f"Erreur de domaine ({args.command}) : {e}")
        env = OutputEnvelope(args.command, _parameters(args), payload=e.details, error=str(e))
        err.write(f"❌ {e}\n")
    except ValueError as e:
        err.write(f"❌ Usage : {e}\n")
        return EXIT_USAGE

    try:
        _emit(env, args, out)
    except OSError as e:
        logger.error(f"Écriture impossible ({args.command}) : {e}")
        err.write(f"❌ Écriture impossible : {e}\n")
        return EXIT_DOMAIN
    return env.exit_code
