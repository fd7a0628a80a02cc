"""
reading and writing strategies as JSON documents.

A strategy document looks like this:
.. code-block:: json

   {
     "n": 2, "dim_A": 2, "dim_B": 2,
     "state": [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0], [-0.5, 0.0]],
     "alice_obs": { "0": [ [[[0,0],[1,0]], [[1,0],[0,0]]] ], "1": [ ... ] },
     "bob_obs":   { "0": [ ... ], "1": [ ... ] }
   }

Complex numbers are written as [re, im] pairs and matrices as lists of rows.  Floats are
written with Python's shortest round-tripping representation, so reading back a written
document reproduces every entry bit for bit.
"""
import json, os, logging
from collections.abc import Mapping

import numpy as np
import jsonschema

from .exceptions import StrategyFormatError
from .model import Strategy

__all__ = [ 'STRATEGY_SCHEMA', 'strategy_to_dict', 'strategy_from_dict', 'dump_strategy',
            'load_strategy', 'get_schema_dir', 'validate_document' ]

log = logging.getLogger(__name__)

STRATEGY_SCHEMA = "strategy-schema.json"

def get_schema_dir():
    """
    return the directory holding the JSON schemas, or None if it cannot be found.  The
    PARCHSH_SCHEMA_DIR environment variable takes precedence over the source tree's model
    directory.
    """
    out = os.environ.get('PARCHSH_SCHEMA_DIR')
    if out:
        return out
    out = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(
                          os.path.dirname(os.path.abspath(__file__))))), "model")
    if os.path.isdir(out):
        return out
    return None

def validate_document(data, schemafile, schemadir=None):
    """
    validate a document against one of the schemas in the schema directory and return the list
    of error messages.  An empty list is returned if the schema is not available.
    """
    if not schemadir:
        schemadir = get_schema_dir()
    path = os.path.join(schemadir, schemafile) if schemadir else None
    if not path or not os.path.exists(path):
        log.debug("schema %s not found; skipping validation", schemafile)
        return []

    with open(path) as fd:
        schema = json.load(fd)
    valid8r = jsonschema.Draft4Validator(schema)
    return [e.message for e in valid8r.iter_errors(data)]

def _complex_pair(z):
    z = complex(z)
    return [z.real, z.imag]

def _matrix_to_list(M):
    return [[_complex_pair(z) for z in row] for row in np.asarray(M)]

def _list_to_matrix(rows, dim, where):
    try:
        out = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
    except (TypeError, ValueError) as ex:
        raise StrategyFormatError("malformed matrix in " + where, ex)
    if out.shape != (dim, dim):
        raise StrategyFormatError("matrix in %s has shape %s (need %s)" %
                                  (where, str(out.shape), str((dim, dim))))
    return out

def strategy_to_dict(strategy: Strategy) -> Mapping:
    """
    return the JSON-ready representation of a strategy
    """
    def _table(table):
        return { str(q): [_matrix_to_list(o) for o in table[q]] for q in sorted(table) }

    return {
        "n": strategy.n,
        "dim_A": strategy.dim_a,
        "dim_B": strategy.dim_b,
        "state": [_complex_pair(z) for z in strategy.state],
        "alice_obs": _table(strategy.alice_obs),
        "bob_obs": _table(strategy.bob_obs)
    }

def strategy_from_dict(data: Mapping, src=None) -> Strategy:
    """
    rebuild a strategy from its JSON-ready representation
    :raises StrategyFormatError:  if the document is incomplete or malformed
    """
    errs = validate_document(data, STRATEGY_SCHEMA)
    if errs:
        raise StrategyFormatError("document does not match the strategy schema", src=src,
                                  errors=errs)

    try:
        n, dim_a, dim_b = int(data['n']), int(data['dim_A']), int(data['dim_B'])
        state = np.array([complex(re, im) for re, im in data['state']], dtype=complex)
        alice = { q: [_list_to_matrix(m, dim_a, "alice_obs."+q) for m in obs]
                  for q, obs in data['alice_obs'].items() }
        bob = { q: [_list_to_matrix(m, dim_b, "bob_obs."+q) for m in obs]
                for q, obs in data['bob_obs'].items() }
    except KeyError as ex:
        raise StrategyFormatError("missing required property: " + str(ex), ex, src)
    except (TypeError, ValueError) as ex:
        raise StrategyFormatError("malformed value: " + str(ex), ex, src)

    return Strategy(n, dim_a, dim_b, state, alice, bob)

def dump_strategy(strategy: Strategy, dest):
    """
    write a strategy to a file
    :param dest:  a file path or an open, writable file-like object
    """
    data = strategy_to_dict(strategy)
    if hasattr(dest, 'write'):
        json.dump(data, dest, indent=1)
        return
    with open(dest, 'w') as fd:
        json.dump(data, fd, indent=1)

def load_strategy(src) -> Strategy:
    """
    read a strategy from a file
    :param src:  a file path or an open, readable file-like object
    :raises StrategyFormatError:  if the file is not a parseable strategy document
    """
    name = getattr(src, 'name', src)
    try:
        if hasattr(src, 'read'):
            data = json.load(src)
        else:
            with open(src) as fd:
                data = json.load(fd)
    except ValueError as ex:
        raise StrategyFormatError("not valid JSON: " + str(ex), ex, name)
    except IOError as ex:
        raise StrategyFormatError("unable to read file: " + str(ex), ex, name)

    if not isinstance(data, Mapping):
        raise StrategyFormatError("document is not a JSON object", src=name)
    return strategy_from_dict(data, name)
