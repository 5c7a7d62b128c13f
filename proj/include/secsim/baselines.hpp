#ifndef SECSIM_BASELINES_HPP
#define SECSIM_BASELINES_HPP

#include <memory>
#include <string>
#include <vector>

#include "secsim/strategy.hpp"

namespace secsim::baselines {

enum class StrategyKind {
    SunlightAware,
    LocalImmediate,
    IntraOrbitPipeline,
    GreedyPeer,
    GroundOnly
};

StrategyKind strategy_from_name(const std::string& name);
const char* strategy_name(StrategyKind kind);

std::unique_ptr<sim::Strategy> make_strategy(StrategyKind kind);

// Process everything at the source, FIFO, as soon as the processor frees up.
class LocalImmediateStrategy : public sim::Strategy {
  public:
    const char* name() const override { return "LocalImmediate"; }
    sim::Decision on_arrival(const sim::SimView& view, int task_index) override;
    sim::Decision on_offload_complete(const sim::SimView& view, int task_index,
                                      int dst_sat) override;

  private:
    std::vector<int> tail_;  // per satellite, first free slot of its FIFO plan
    int reserve(const sim::SimView& view, int sat, int ready_slot, int t_cp);
};

// OEC-like stand-in: round-robin tasks across the source orbit's satellites.
class IntraOrbitPipelineStrategy : public sim::Strategy {
  public:
    const char* name() const override { return "IntraOrbitPipeline"; }
    sim::Decision on_arrival(const sim::SimView& view, int task_index) override;
    sim::Decision on_offload_complete(const sim::SimView& view, int task_index,
                                      int dst_sat) override;

  private:
    std::vector<int> next_;  // per orbit round-robin pointer
    std::vector<int> tail_;
    int reserve(const sim::SimView& view, int sat, int ready_slot, int t_cp);
};

// MHSPO-like stand-in: among the source and its ISL neighbors pick the one
// with the most remaining battery; sunlight-oblivious by construction.
class GreedyPeerStrategy : public sim::Strategy {
  public:
    const char* name() const override { return "GreedyPeer"; }
    sim::Decision on_arrival(const sim::SimView& view, int task_index) override;
    sim::Decision on_offload_complete(const sim::SimView& view, int task_index,
                                      int dst_sat) override;

  private:
    std::vector<int> tail_;
    int reserve(const sim::SimView& view, int sat, int ready_slot, int t_cp);
};

// L2D2-like stand-in: everything goes down the next visible station's serial
// queue; no on-board processing at all.
class GroundOnlyStrategy : public sim::Strategy {
  public:
    const char* name() const override { return "GroundOnly"; }
    sim::Decision on_arrival(const sim::SimView& view, int task_index) override;
    sim::Decision on_offload_complete(const sim::SimView& view, int task_index,
                                      int dst_sat) override;
};

}  // namespace secsim::baselines

#endif
