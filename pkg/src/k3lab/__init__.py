"""k3lab: exact lattice certificates and finite-field constructions for
polarized K3 surfaces carrying many low-degree elliptic pencils.

Subpackages:
  exactlin       exact linear algebra over Q, Z and F_{p^k}
  k3lattice      even hyperbolic Picard-lattice arithmetic and certificates
  grassmann      Pluecker coordinates, linear sections, graded ideals
  constructions  seeded surface pipelines over small finite fields
  cli            command line front end

All JSON payloads carry a "schema" field; the current tag is "k3lab/1".
"""

SCHEMA = "k3lab/1"

__version__ = "0.1.0"
