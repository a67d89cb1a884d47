"""Sparse-sequence perturbation construction and inequality verification."""

__version__ = "0.1.0"

from .errors import (ConfigError, EmptyPrefixError, GaugeDomainError,
                     GaugeGrowthError, MissingPlanError, PreconditionError,
                     ResourceLimitError, ScheduleValueError,
                     SearchBudgetExhausted, SweepoutError)
from .exact import RootValue, nth_root_floor
from .gauges import (OrliczGauge, PowerGauge, LogPowerGauge, LogLogGauge,
                     LogChainGauge, TableGauge, UnitGauge, YoungFunctional,
                     IdentityYoung, ProductYoung, QuotientYoung,
                     gauge_from_spec, orlicz_integral)
from .sequences import (BaseSequence, SquareSequence, BlockSequence,
                        IntegerSequence, FileSequence, DensityRecordPoint,
                        count_congruent, find_density_record,
                        sequence_from_spec, dump_sequence, load_sequence)
from .stepfn import StepFunction
from .schedules import (PerturbationSchedule, DirectInversionSchedule,
                        LogInversionSchedule, WeightedLogInversionSchedule,
                        StageNumbers, schedule_from_spec)
from .construction import (PerturbationPlan, PerturbedSequence,
                           IntervalChoice, build_plan, load_plan,
                           plan_from_dict, select_interval)
from .density import (LatticeFunction, WitnessDensity, witness_density,
                      stage_lattice_function, density_of_shift_set)
from .averages import (ShiftSystem, RotationSystem, SweepoutWitness,
                       average_along, max_average, sweepout_witness,
                       smallest_qualifying_u)
from .series import (SeriesReport, GridReport, default_p_grid,
                     theorem_a_series, theorem_b_series, theorem_b_grid,
                     fixed_family_check, lemma_series, lemma_grid)
from .extrapolation import (OperatorHandle, HypothesisReport,
                            DecompositionTrace, identity_operator,
                            doubled_identity_operator,
                            dyadic_averaging_operator, random_step_function,
                            check_hypothesis, trace_conclusion,
                            constant_A_phi, small_case_constant)
