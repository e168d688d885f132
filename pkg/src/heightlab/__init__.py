"""Heights, units and ideals in number fields, with genus two and Galois tooling."""
