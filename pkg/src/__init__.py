"""chernoff-kit - Chernoff product formulae for matrix semigroups."""

__version__ = "1.0.0"
