# Default size bounds; the CLI can lift them with --allow-large.
MAX_ATOMS = 6
MAX_POSET_LABELED = 6
MAX_POSET_ISO = 8
MAX_HOMS = 1_000_000
