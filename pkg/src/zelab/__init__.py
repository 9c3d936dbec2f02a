"""Desk-scale toolkit for zero-entropy interval dynamics.

Submodules
----------
seqlab     Mobius sieve, Cesaro averages, Weyl sums, upper densities.
odometer   exact finite-depth model of the binary adding machine.
mapengine  interval map families, periodic points, entropy screen,
           Perron eigenvalues, period-doubling cascade parameters.
tower      nested interval towers with binary coding and itineraries.
verifier   mean-L-stability, equicontinuity, mean-attraction, and
           linear-disjointness probes.
harness    command-line front end and report emission.
"""

from .mapengine import (CascadeFit, MapSpec, PeriodicOrbitSet, PerronResult,
                        ScreenResult, SearchError, TransitionMatrix,
                        cascade_accumulation, entropy_screen, iterate,
                        locate_cascade_parameter, parse_map, periodic_points,
                        perron_eigenvalue)
from .odometer import (Cylinder, OdometerPoint, Progression, add_k,
                       cylinder_census, odometer_metric, progression_density,
                       shift)
from .seqlab import (ArithmeticSequence, CesaroSeries, DensityReport,
                     OscillationReport, cesaro_average, geometric_schedule,
                     mobius_sieve, oscillation_test, upper_density_estimate,
                     weyl_sums)
from .tower import (Itinerary, Interval, NotAttractedError, Tower,
                    TowerReport, build_tower, itinerary, label_value,
                    label_word, tau, verify_tower)
from .verifier import (AttractionResult, EquicontinuityReport, MlsVerdict,
                       Observable, ProbeConfig, SamplingError,
                       disjointness_run, equicontinuity_probe,
                       make_observable, mean_attraction_search, mls_probe,
                       table_observable)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticSequence", "AttractionResult", "CascadeFit", "CesaroSeries",
    "Cylinder", "DensityReport", "EquicontinuityReport", "Interval",
    "Itinerary", "MapSpec", "MlsVerdict", "NotAttractedError", "Observable",
    "OdometerPoint", "OscillationReport", "PeriodicOrbitSet", "PerronResult",
    "ProbeConfig", "Progression", "SamplingError", "ScreenResult",
    "SearchError", "Tower", "TowerReport", "TransitionMatrix", "add_k",
    "build_tower", "cascade_accumulation", "cesaro_average", "cylinder_census",
    "disjointness_run", "entropy_screen", "equicontinuity_probe",
    "geometric_schedule", "iterate", "itinerary", "label_value", "label_word",
    "locate_cascade_parameter", "make_observable", "mean_attraction_search",
    "mls_probe", "mobius_sieve", "odometer_metric", "oscillation_test",
    "parse_map", "periodic_points", "perron_eigenvalue", "progression_density",
    "shift", "table_observable", "tau", "upper_density_estimate",
    "verify_tower", "weyl_sums",
]
