from _spsfeedback_sdk.rates.models import MeasurementModel
from _spsfeedback_sdk.rates.threshold import complete_rates
from _spsfeedback_sdk.rates.threshold import exceed_probability_approx
from _spsfeedback_sdk.rates.threshold import exceed_probability_exact
from _spsfeedback_sdk.rates.threshold import nu0_from_nu1
from _spsfeedback_sdk.rates.threshold import nu0_oracle
from _spsfeedback_sdk.rates.threshold import rates_for
from _spsfeedback_sdk.rates.threshold import switch_rate
from _spsfeedback_sdk.rates.threshold import tau_from_nu1

__all__ = [
    "MeasurementModel",
    "complete_rates",
    "exceed_probability_approx",
    "exceed_probability_exact",
    "nu0_from_nu1",
    "nu0_oracle",
    "rates_for",
    "switch_rate",
    "tau_from_nu1",
]
