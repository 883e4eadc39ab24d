"""Quench-schedule design and Kibble-Zurek scaling analysis for the transverse Ising chain."""

from .protocols import (
    ISING_CHAIN,
    AdiabaticityWarning,
    AlphaPolicy,
    CriticalData,
    QuenchProtocol,
    ScheduleError,
    WindowError,
    make_linear,
    make_nlq,
    make_nloai,
    make_oai,
    write_schedule_csv,
)
from .ising import (
    DegenerateModeError,
    ModeGrid,
    ModeHamiltonian,
    ModeState,
    dispersion,
    excited_state,
    ground_state,
    mode_grid,
)
from .dynamics import (
    FrozenDrive,
    IntegrationError,
    ModeDensity,
    QuenchResult,
    StepPolicy,
    defect_density,
    evolve_lindblad,
    evolve_pure,
    excitation_probability,
    sudden_quench,
)
from .scaling import (
    AkzModel,
    FitDomainError,
    NoMinimumError,
    PowerLawFit,
    ZetaCollapse,
    adiabatic_time_for_size,
    defect_model,
    fit_power_law,
    fit_zeta_collapse,
    kz_reference,
    optimal_tau,
    sudden_reference,
    theory_exponents,
)

__version__ = "0.1.0"
