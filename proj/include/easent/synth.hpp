#pragma once

#include "easent/sentiment.hpp"
#include "easent/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <vector>

namespace easent::synth {

/// Parameters of a synthetic dataset. Defaults are sized like the DJIA
/// corpus: roughly 200 tweets per ticker per trading day with a 2.4x volume
/// lift on days -1..+1 of each announcement.
struct SynthSpec {
    std::uint64_t seed = 42;
    int tickers = 30;
    int days = 800;  // trading days, weekends and `holidays` skipped
    Date start_date = Date{std::chrono::year{2013} / 1 / 2};
    std::vector<Date> holidays;

    // market model
    double alpha = 0.0;
    double beta = 1.0;
    std::vector<double> alphas;  // per ticker, overrides alpha when non-empty
    std::vector<double> betas;   // per ticker, overrides beta when non-empty
    double index_vol = 0.01;
    double idio_vol = 0.01;
    double initial_price = 100.0;
    double initial_index = 15000.0;

    // planted day-0 abnormal jump per class
    double jump_negative = -0.02;
    double jump_neutral = 0.0;
    double jump_positive = 0.02;

    // event schedule
    int warmup = 130;         // first possible day 0
    int tail = 15;            // trading days kept after the last day 0
    int event_spacing = 63;   // trading days between a ticker's events
    double after_close_fraction = 0.3;

    // tweets
    double tweets_per_day = 200.0;
    double event_multiplier = 2.4;   // applied on days -1, 0, +1
    double p_negative = 0.15;
    double p_positive = 0.25;
    double sentiment_coupling = 0.12;  // day-0 shift of p_pos/p_neg toward the class sign

    // trading volume
    double base_volume = 5.0e6;
    double volume_multiplier = 2.0;

    // earnings
    double eps_base = 1.0;
    double surprise_bias = 0.04;
    double surprise_coupling = 0.05;
    double surprise_noise = 0.03;

    /// Throws Error(InvalidSpec).
    void validate() const;
};

void to_json(nlohmann::json& j, const SynthSpec& s);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, SynthSpec& s);

struct PlantedEvent {
    Ticker ticker;
    Instant announce_at;
    Timing timing;
    Date day0;
    sentiment::EventPolarity polarity;
    double jump;
};

struct SynthOutput {
    Dataset dataset;
    std::vector<PlantedEvent> planted;  // same order as dataset.events
};

SynthOutput generate_with_truth(const SynthSpec& spec);
Dataset generate(const SynthSpec& spec);

std::string synthetic_ticker(int i);

} // namespace easent::synth
