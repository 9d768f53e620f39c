"""Donnan-equilibrium estimates for ion channels and porous electrodes."""
from core.donnan import (
    ChannelGeometry, ElectrodeGeometry, PhysicalConditions, channel_alpha, channel_bath_ratio,
    debye_length, electrode_alpha, electrode_bulk_ratio, electrode_fraction, nondim_voltage,
    thermal_voltage
)
from core.errors import InvalidParameterError
from core.output_writer import OutputRecord

NAME = "estimate"
DESCRIPTION = "Bulk depletion and geometry thresholds for channels or porous electrodes."
PARAMETERS = [
    {"name": "kind", "type": "str", "positional": True, "choices": ["channel", "electrode"],
     "description": "Geometry to estimate."},
    {"name": "r", "type": "float", "default": 180.0, "description": "Channel enrichment p_channel / c_bulk."},
    {"name": "max_error", "type": "float", "default": 0.01, "description": "Tolerated relative depletion."},
    {"name": "channel_delta", "type": "float", "default": None,
     "description": "Channel-to-bath volume ratio; adds alpha to the record."},
    {"name": "phi_el", "type": "float", "default": None, "description": "Electrode Donnan potential, thermal units."},
    {"name": "voltage", "type": "float", "default": None, "description": "Electrode potential in volts."},
    {"name": "temperature", "type": "float", "default": 298.0, "description": "Temperature in kelvin."},
    {"name": "concentration", "type": "float", "default": None,
     "description": "Bulk salt concentration in mol/L; adds the Debye length."},
    {"name": "permittivity", "type": "float", "default": 78.5, "description": "Relative permittivity."},
    {"name": "delta_err", "type": "float", "default": 0.01, "description": "Tolerated depletion for electrodes."},
    {"name": "porosity", "type": "float", "default": 0.3, "description": "Electrode porosity."},
    {"name": "fraction", "type": "float", "default": None,
     "description": "Electrolyte share of one electrode; adds alpha to the record."},
    {"name": "bulk_width", "type": "float", "default": None, "description": "Bulk width (with --electrode_width)."},
    {"name": "electrode_width", "type": "float", "default": None, "description": "Width of each electrode."},
]


def _physical(args, results: dict) -> None:
    if args.concentration is None:
        return
    cond = PhysicalConditions(args.concentration, args.temperature, args.permittivity,
                              args.voltage or 0.0)
    results["debye_length_m"] = debye_length(cond)
    results["thermal_voltage_V"] = thermal_voltage(args.temperature)
    if args.voltage is not None:
        results["voltage_thermal"] = nondim_voltage(cond)


def _channel(args) -> dict:
    results = {
        "r": args.r,
        "max_error": args.max_error,
        "bath_to_channel_ratio": channel_bath_ratio(args.r, args.max_error),
    }
    if args.channel_delta is not None:
        estimate = channel_alpha(ChannelGeometry(args.channel_delta, args.r))
        results.update({"channel_delta": args.channel_delta, "alpha": estimate.alpha,
                        "alpha_linearized": estimate.alpha_linearized})
    return results


def _electrode(args) -> dict:
    if args.phi_el is not None:
        phi = args.phi_el
    elif args.voltage is not None:
        phi = args.voltage / thermal_voltage(args.temperature)
    else:
        raise InvalidParameterError("electrode estimates need --phi_el or --voltage")
    thresholds = electrode_bulk_ratio(phi, args.delta_err, args.porosity)
    results = {
        "phi_electrode": phi,
        "delta_err": args.delta_err,
        "porosity": args.porosity,
        "cosh_form": thresholds.cosh_form,
        "numeric_form": thresholds.numeric_form,
    }
    fraction = args.fraction
    if fraction is None and args.bulk_width is not None and args.electrode_width is not None:
        fraction = electrode_fraction(args.bulk_width, args.electrode_width, args.porosity)
    if fraction is not None:
        results["electrode_fraction"] = fraction
        results["alpha"] = electrode_alpha(ElectrodeGeometry(fraction, phi, args.porosity))
    return results


def run(args) -> OutputRecord:
    results = _channel(args) if args.kind == "channel" else _electrode(args)
    _physical(args, results)
    inputs = {p["name"]: getattr(args, p["name"]) for p in PARAMETERS
              if getattr(args, p["name"]) is not None}
    return OutputRecord(NAME, inputs, results=results)
