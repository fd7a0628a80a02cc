"""
serialization of self-test reports to JSON
"""
import json, logging
from collections import OrderedDict
from typing import Mapping

from ..strategy.serialize import validate_document
from .certify import SelfTestReport, scaling_ratios
from .exceptions import VerificationError

__all__ = [ 'REPORT_SCHEMA', 'report_to_dict', 'dump_report', 'sig' ]

log = logging.getLogger(__name__)

REPORT_SCHEMA = "selftest-report-schema.json"

def sig(x, digits: int=12):
    """
    round a float to the given number of significant digits (None passes through)
    """
    if x is None:
        return None
    return float("%.*g" % (digits, x))

def _sigdict(d: Mapping) -> OrderedDict:
    return OrderedDict((k, sig(v) if isinstance(v, float) else v) for k, v in d.items())

def report_to_dict(report: SelfTestReport) -> OrderedDict:
    """
    return the JSON-ready form of a report, with norms rounded to 12 significant digits
    """
    out = OrderedDict()
    out['n'] = report.n
    out['value'] = sig(report.value)
    out['epsilon'] = sig(report.epsilon)
    out['delta_cert'] = sig(report.delta_cert)
    out['delta_in_range'] = report.delta_in_range
    out['delta_per_subtest'] = [sig(d) for d in report.delta_per_subtest]
    out['certified'] = _sigdict(report.certified)
    out['measured'] = _sigdict(report.measured.to_dict())
    out['flags'] = OrderedDict(report.flags)
    out['passed'] = report.passed
    out['violations'] = list(report.violations)
    out['junk_norm'] = sig(report.junk_norm)
    out['few_question_delta'] = sig(report.few_question_delta)
    out['dist_fixed_max'] = sig(report.dist_fixed_max)
    out['dist_opt_max'] = sig(report.dist_opt_max)
    out['scaling'] = _sigdict(scaling_ratios(report))

    if report.search:
        s = report.search
        out['search'] = OrderedDict([
            ('q_b_star', str(s.q_b_star)),
            ('q_a_star', str(s.q_a_star)),
            ('g_star', sig(s.g_star)),
            ('transcript', [t.to_dict() for t in s.transcript]),
            ('pair_questions', [ OrderedDict([('k', k), ('l', l), ('question', str(q)),
                                              ('f', [sig(v) for v in s.pair_values[(k, l)]])])
                                 for (k, l), q in sorted(s.pair_questions.items()) ])
        ])

    out['pair_norms'] = []
    for k, pn in enumerate(report.pair_norms):
        entry = _sigdict(dict((key, v) for key, v in pn.items() if key != "bounds"))
        entry['k'] = k
        entry['bounds'] = _sigdict(pn['bounds'])
        out['pair_norms'].append(entry)

    out['distances'] = [ OrderedDict([('p', p), ('q', q), ('fixed', sig(d['fixed'])),
                                      ('optimal', sig(d['optimal']))])
                         for (p, q), d in report.distances.items() ]
    return out

def dump_report(report: SelfTestReport, dest, validate: bool=True):
    """
    write a report as JSON
    :param dest:      a file path or an open, writable file-like object
    :param validate:  if True, check the document against the report schema first
    :raises VerificationError:  if the document does not match the schema
    """
    data = report_to_dict(report)
    if validate:
        # round trip through JSON so the schema sees plain containers
        errs = validate_document(json.loads(json.dumps(data)), REPORT_SCHEMA)
        if errs:
            raise VerificationError("report does not match its schema: " + "; ".join(errs))

    if hasattr(dest, 'write'):
        json.dump(data, dest, indent=2)
        dest.write("\n")
        return
    with open(dest, 'w') as fd:
        json.dump(data, fd, indent=2)
        fd.write("\n")
