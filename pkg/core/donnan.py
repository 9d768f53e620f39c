"""
Donnan-equilibrium estimates for ion channels and porous electrodes, plus
conversions between SI and thermal/Debye units.
"""
import logging
import math
from dataclasses import dataclass

from config.constants import (
    AVOGADRO, BOLTZMANN, ELEMENTARY_CHARGE, LITERS_PER_CUBIC_METER, VACUUM_PERMITTIVITY
)
from .errors import GeometryError, InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhysicalConditions:
    """Bulk salt concentration (mol/L), temperature (K), relative permittivity, voltage (V)."""
    concentration: float
    temperature: float
    relative_permittivity: float
    voltage: float = 0.0

    def __post_init__(self):
        for name in ("concentration", "temperature", "relative_permittivity"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"{name} must be positive, got {value}")
        if not math.isfinite(self.voltage):
            raise InvalidParameterError("voltage must be finite")


@dataclass(frozen=True)
class ChannelGeometry:
    """Channel-to-bath volume ratio and cation enrichment p_channel / c_bulk."""
    volume_ratio_delta: float
    enrichment_r: float

    def __post_init__(self):
        if not self.volume_ratio_delta >= 0:
            raise InvalidParameterError("volume_ratio_delta must be >= 0")
        if not self.enrichment_r > 0:
            raise InvalidParameterError("enrichment_r must be positive")


@dataclass(frozen=True)
class ElectrodeGeometry:
    """
    Two identical porous electrodes around a bulk region.

    volume_fraction_electrode is one electrode's share of the electrolyte
    volume, so the bulk holds 1 - 2*volume_fraction_electrode.
    """
    volume_fraction_electrode: float
    donnan_potential: float
    porosity: float

    def __post_init__(self):
        if not 0 <= self.volume_fraction_electrode < 1:
            raise InvalidParameterError("volume_fraction_electrode must lie in [0, 1)")
        if not 0 < self.porosity < 1:
            raise InvalidParameterError("porosity must lie in (0, 1)")


@dataclass(frozen=True)
class ChannelEstimate:
    alpha: float
    alpha_linearized: float


@dataclass(frozen=True)
class ElectrodeThreshold:
    """Two bulk-to-electrode volume thresholds that disagree for charged electrodes."""
    cosh_form: float
    numeric_form: float


def debye_length(cond: PhysicalConditions) -> float:
    """
    Debye length in meters, sqrt(eps0*eps_r*kB*T / (2*c*q^2)).

    Args:
        cond: Physical conditions; concentration in mol/L

    Returns:
        float: Length in meters
    """
    number_density = cond.concentration * LITERS_PER_CUBIC_METER * AVOGADRO
    return math.sqrt(VACUUM_PERMITTIVITY * cond.relative_permittivity * BOLTZMANN
                     * cond.temperature / (2.0 * number_density * ELEMENTARY_CHARGE ** 2))


def thermal_voltage(temperature: float) -> float:
    """kB*T/q in volts."""
    if temperature <= 0:
        raise InvalidParameterError("temperature must be positive")
    return BOLTZMANN * temperature / ELEMENTARY_CHARGE


def nondim_voltage(cond: PhysicalConditions) -> float:
    """Voltage in thermal units, q*V/(kB*T)."""
    return cond.voltage / thermal_voltage(cond.temperature)


def length_in_debye_units(length_m: float, cond: PhysicalConditions) -> float:
    return length_m / debye_length(cond)


def channel_alpha(geom: ChannelGeometry) -> ChannelEstimate:
    """
    Bulk depletion caused by counter-ions held in a channel.

    Conservation over two baths and the channel gives
    1/alpha = 2/(2 + delta) + (r/alpha) * delta/(2 + delta), which clears to
    alpha = 1 - (r - 1)*delta/2. The linearized value is
    1/(1 + (r - 1)*delta/2).

    Raises:
        GeometryError: If the channel holds more ions than the baths can supply
    """
    k = 0.5 * (geom.enrichment_r - 1.0)
    delta = geom.volume_ratio_delta
    alpha = 1.0 - k * delta
    if alpha <= 0:
        raise GeometryError(
            f"No positive bulk density for delta={delta:g}, r={geom.enrichment_r:g}")
    linear_denominator = 1.0 + k * delta
    if linear_denominator <= 0:
        raise GeometryError("linearized depletion is not positive")
    return ChannelEstimate(alpha=alpha, alpha_linearized=1.0 / linear_denominator)


def channel_bath_ratio(r: float, max_error: float) -> float:
    """
    Smallest bath-to-channel volume ratio keeping the depletion below max_error.

    Returns:
        float: 1/delta = (r - 1) / (2*max_error)
    """
    if not r > 1:
        raise InvalidParameterError("r must exceed 1")
    if not 0 < max_error < 1:
        raise InvalidParameterError("max_error must lie in (0, 1)")
    return (r - 1.0) / (2.0 * max_error)


def electrode_alpha(geom: ElectrodeGeometry) -> float:
    """1/alpha = (1 - 2f) + 2f*cosh(phi_electrode)."""
    f = geom.volume_fraction_electrode
    if 2.0 * f > 1.0:
        raise GeometryError(f"Two electrodes with fraction {f:g} leave no bulk")
    inverse = (1.0 - 2.0 * f) + 2.0 * f * math.cosh(geom.donnan_potential)
    return 1.0 / inverse


def electrode_fraction(bulk_width: float, electrode_width: float, porosity: float) -> float:
    """
    Electrolyte share of one electrode in a bulk / two-electrode stack.

    Args:
        bulk_width: Width of the free electrolyte region
        electrode_width: Width of each electrode
        porosity: Pore volume fraction of the electrodes

    Returns:
        float: porosity*w_e / (w_b + 2*porosity*w_e)
    """
    if bulk_width < 0 or electrode_width < 0:
        raise InvalidParameterError("widths must be non-negative")
    if not 0 < porosity < 1:
        raise InvalidParameterError("porosity must lie in (0, 1)")
    accessible = porosity * electrode_width
    total = bulk_width + 2.0 * accessible
    if total <= 0:
        raise GeometryError("stack has no electrolyte volume")
    return accessible / total


def electrode_bulk_ratio(phi_el: float, delta_err: float, porosity: float) -> ElectrodeThreshold:
    """
    Bulk-to-electrode volume ratio needed to keep the depletion below delta_err.

    cosh_form: 2*((1 - delta)*cosh(phi) - 1)/delta, porosity independent.
    numeric_form: porosity*(2/delta)*((1 - delta) - exp(-phi)).
    The two agree only for uncharged electrodes; both are reported.
    """
    if not 0 < delta_err < 1:
        raise InvalidParameterError("delta_err must lie in (0, 1)")
    if not 0 < porosity < 1:
        raise InvalidParameterError("porosity must lie in (0, 1)")
    cosh_form = 2.0 * ((1.0 - delta_err) * math.cosh(phi_el) - 1.0) / delta_err
    numeric_form = porosity * (2.0 / delta_err) * ((1.0 - delta_err) - math.exp(-abs(phi_el)))
    if cosh_form > 0 and numeric_form > 0 and cosh_form / numeric_form > 10:
        logger.info("Electrode thresholds differ by a factor %.3g", cosh_form / numeric_form)
    return ElectrodeThreshold(cosh_form=cosh_form, numeric_form=numeric_form)
