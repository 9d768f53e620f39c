"""Physical constants (CODATA, SI units) used for dimensional conversions."""
import scipy.constants as sc

PHYSICAL_CONSTANTS = {
    "elementary_charge": sc.e,          # C
    "boltzmann": sc.Boltzmann,          # J/K
    "avogadro": sc.Avogadro,            # 1/mol
    "vacuum_permittivity": sc.epsilon_0,  # F/m
}

ELEMENTARY_CHARGE = PHYSICAL_CONSTANTS["elementary_charge"]
BOLTZMANN = PHYSICAL_CONSTANTS["boltzmann"]
AVOGADRO = PHYSICAL_CONSTANTS["avogadro"]
VACUUM_PERMITTIVITY = PHYSICAL_CONSTANTS["vacuum_permittivity"]

# mol/L -> 1/m^3
LITERS_PER_CUBIC_METER = 1000.0
