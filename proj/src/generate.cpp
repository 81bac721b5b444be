/*
 * Copyright 2026 The cechain Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cechain/generate.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace cechain {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) {
            return lo;
        }
        return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool chance(double p) { return static_cast<double>(engine_() % 1'000'000) < p * 1'000'000.0; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(between(0, static_cast<std::int64_t>(items.size()) - 1))];
    }

private:
    std::mt19937_64 engine_;
};

struct Input {
    std::size_t producer;  // task index
    std::string port;
};

struct TaskPlan {
    std::size_t instance = 0;
    std::vector<Input> inputs;
    std::optional<std::string> compound;
};

}  // namespace

GeneratedModel generate_model(std::uint64_t seed, const GeneratorLimits& limits) {
    Rng rng(seed);
    const auto n = static_cast<std::size_t>(rng.between(limits.min_tasks, limits.max_tasks));

    // group tasks into instances; each instance gets its own component
    std::vector<TaskPlan> plan(n);
    std::size_t instances = 0;
    std::vector<std::size_t> per_instance;
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0 && per_instance.back() < 2 && rng.chance(0.3)) {
            plan[j].instance = instances - 1;
            ++per_instance.back();
        } else {
            plan[j].instance = instances++;
            per_instance.push_back(1);
        }
    }

    GeneratedModel model;
    model.config.name = "Gen" + std::to_string(seed);
    model.components.resize(instances);
    model.config.instances.resize(instances);
    for (std::size_t i = 0; i < instances; ++i) {
        model.components[i].name = "Comp" + std::to_string(i);
        model.config.instances[i].name = "inst" + std::to_string(i);
        model.config.instances[i].component.name = model.components[i].name;
    }

    auto out_port = [](std::size_t j) { return "out" + std::to_string(j); };
    auto msg_type = [](std::size_t j) { return "Msg" + std::to_string(j); };
    auto frequency = [&]() {
        double f = static_cast<double>(rng.between(limits.min_hz, limits.max_hz));
        if (limits.fractional && rng.chance(0.3)) {
            f += static_cast<double>(rng.between(1, 3)) * 0.25;
        }
        return Hertz{f};
    };
    auto duration_us = [&](std::int64_t lo_us, std::int64_t hi_us) {
        return Duration{rng.between(lo_us, hi_us) * 1000};
    };

    // data inputs: the first from an earlier task (safe to data-trigger on),
    // an optional second from any other task
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0 && rng.chance(0.85)) {
            plan[j].inputs.push_back({static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(j) - 1)), ""});
        }
        if (n > 1 && rng.chance(0.4)) {
            std::size_t p = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(n) - 2));
            if (p >= j) {
                ++p;
            }
            plan[j].inputs.push_back({p, ""});
        }
        for (std::size_t m = 0; m < plan[j].inputs.size(); ++m) {
            plan[j].inputs[m].port = "in" + std::to_string(j) + "_" + std::to_string(m);
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        auto& comp = model.components[plan[j].instance];
        auto& inst = model.config.instances[plan[j].instance];
        const std::string task_name = "T" + std::to_string(j);

        comp.out_ports.push_back({out_port(j), msg_type(j), {}});
        TaskDef task;
        task.name = task_name;
        task.kind = limits.cooperative && rng.chance(0.3) ? TaskKind::Cooperative : TaskKind::Preemptive;
        task.writes.push_back({out_port(j), {}});

        for (const auto& in : plan[j].inputs) {
            comp.in_ports.push_back({in.port, msg_type(in.producer), {}});
            Connection conn;
            conn.from = {model.config.instances[plan[in.producer].instance].name, out_port(in.producer), {}};
            conn.to = {inst.name, in.port, {}};
            if (limits.connection_delays && rng.chance(0.2)) {
                conn.delay = duration_us(0, 5000);
            }
            model.config.connections.push_back(std::move(conn));
        }

        const bool all_earlier = !plan[j].inputs.empty() &&
                                 std::all_of(plan[j].inputs.begin(), plan[j].inputs.end(),
                                             [&](const Input& in) { return in.producer < j; });
        if (limits.compounds && plan[j].inputs.size() >= 2 && all_earlier && rng.chance(0.35)) {
            CompoundInPortDef cp;
            cp.name = "cmp" + std::to_string(j);
            cp.combination = rng.chance(0.5) ? Combination::And : Combination::Or;
            for (const auto& in : plan[j].inputs) {
                cp.members.push_back({in.port, {}});
            }
            comp.compounds.push_back(cp);
            plan[j].compound = cp.name;
            task.reads.push_back({cp.name, Dependency::Strict, {}});
        } else {
            for (const auto& in : plan[j].inputs) {
                task.reads.push_back({in.port, rng.chance(0.2) ? Dependency::Optional : Dependency::Strict, {}});
            }
        }

        TaskConfig cfg;
        cfg.task = task_name;
        const bool can_trigger = !plan[j].inputs.empty() && plan[j].inputs.front().producer < j &&
                                 (!plan[j].compound || all_earlier);
        if (can_trigger && rng.chance(0.55)) {
            DataTriggered dt;
            dt.port = plan[j].compound.value_or(plan[j].inputs.front().port);
            dt.prescaler = rng.chance(0.4) ? 1 : static_cast<int>(rng.between(1, limits.max_prescaler));
            cfg.source = dt;
        } else if (limits.unbounded_sporadic && rng.chance(0.05)) {
            cfg.source = Sporadic{};
        } else if (limits.sporadic && rng.chance(0.12)) {
            const Duration lo = duration_us(5'000, 50'000);
            cfg.source = Sporadic{lo, lo + duration_us(0, 50'000)};
        } else {
            cfg.source = PeriodicTimer{frequency()};
        }

        if (rng.chance(0.3)) {
            if (const auto* pt = std::get_if<PeriodicTimer>(&cfg.source)) {
                if (rng.chance(0.5)) {
                    task.constraint = ActivationConstraint{pt->frequency, pt->frequency, false, {}};
                } else {
                    task.constraint =
                        ActivationConstraint{Hertz{pt->frequency.value / 2}, Hertz{pt->frequency.value * 2}, true, {}};
                }
            } else {
                task.constraint = ActivationConstraint{Hertz{0.5}, Hertz{1000}, true, {}};
            }
        }

        if (!(limits.fractional && rng.chance(0.2))) {
            const auto max_us = std::chrono::duration_cast<std::chrono::microseconds>(limits.max_exec).count();
            const Duration bcet = duration_us(0, max_us);
            const Duration wcet = bcet + duration_us(0, max_us - bcet.count() / 1000);
            cfg.exec = ExecTime{bcet, wcet};
        }

        comp.tasks.push_back(std::move(task));
        inst.tasks.push_back(std::move(cfg));
    }

    // chains follow connections into tasks that read the connected port
    auto consumers_of = [&](std::size_t j) {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < n; ++c) {
            for (const auto& in : plan[c].inputs) {
                if (in.producer == j && std::find(out.begin(), out.end(), c) == out.end()) {
                    out.push_back(c);
                }
            }
        }
        return out;
    };
    const int wanted = static_cast<int>(rng.between(1, limits.max_chains));
    for (int attempt = 0; attempt < 4 * wanted && static_cast<int>(model.config.chains.size()) < wanted;
         ++attempt) {
        std::size_t cur = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(n) - 1));
        const auto length = static_cast<std::size_t>(rng.between(2, limits.max_chain_stages));
        std::vector<std::size_t> path{cur};
        while (path.size() < length) {
            const auto next = consumers_of(cur);
            if (next.empty()) {
                break;
            }
            cur = rng.pick(next);
            path.push_back(cur);
        }
        if (path.size() < 2) {
            continue;
        }
        CauseEffectChain chain;
        chain.name = "chain" + std::to_string(model.config.chains.size());
        for (auto t : path) {
            chain.stages.push_back({model.config.instances[plan[t].instance].name, out_port(t), {}});
        }
        if (rng.chance(0.4)) {
            chain.spec = E2ELatencySpec{Duration{0}, duration_us(1'000, 2'000'000)};
        }
        model.config.chains.push_back(std::move(chain));
    }
    return model;
}

}  // namespace cechain
