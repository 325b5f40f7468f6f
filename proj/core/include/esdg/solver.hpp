#pragma once

#include <algorithm>
#include <chrono>
#include <memory>

#include "esdg/diagnostics.hpp"
#include "esdg/exchange.hpp"
#include "esdg/kernels.hpp"
#include "esdg/partition.hpp"
#include "esdg/time_integration.hpp"
#include "esdg/worker_pool.hpp"

namespace esdg {

/// Semi-discrete solver: owns the two LSRK registers, the per-rank
/// workspaces and the exchange machinery. Elements are distributed over
/// `ranks` worker threads in contiguous Morton ranges; every rank touches
/// only its own elements, and cross-rank face traces travel exclusively
/// through the transport mailboxes. The intra-element accumulation order is
/// fixed, so the assembled tendency is bitwise independent of the rank
/// count.
template <class Real>
class Solver {
public:
  Solver(std::shared_ptr<const MeshGeometry> mesh, int order,
         const GasConstants<double>& constants,
         const KernelSettings<Real>& settings, int ranks = 1)
      : mesh_(std::move(mesh)), ref_(order), constants64_(constants),
        gc_(constants.cast<Real>()), settings_(settings),
        ops_(ref_, *mesh_), fx_(ref_.num_nodes()),
        sched_indexing_(build_schedule(ref_.num_nodes(),
                                       ScheduleVariant::Indexing)),
        sched_weighted_(build_schedule(ref_.num_nodes(),
                                       ScheduleVariant::Weighted)),
        part_(make_partition(mesh_->num_elements(), ranks)),
        plan_(build_exchange_plan(*mesh_, part_)),
        q_(mesh_->num_elements(), ops_.n3),
        k_(mesh_->num_elements(), ops_.n3) {
    const std::int64_t ne = mesh_->num_elements();
    if (double(ne) * ops_.n3 >= 9.007199254740992e15)
      throw std::invalid_argument("node count overflows the index contract");

    build_phi();
    pool_ = std::make_unique<WorkerPool>(ranks);
    transport_ = std::make_unique<Transport<Real>>(
        plan_.n_mailboxes, 5 * fx_.nodes_per_face());
    ws_.resize(size_t(ranks));
    for (auto& w : ws_) w.resize(ops_.nq);
    rank_counters_.assign(size_t(ranks), Counters{});
    rank_volume_s_.assign(size_t(ranks), 0.0);
    rank_surface_s_.assign(size_t(ranks), 0.0);
    events_.assign(size_t(ranks), RankEvents{});
    face_records_.assign(size_t(mesh_->faces().size()) * fx_.nodes_per_face(),
                         FaceFluxNode<Real>{});
    ghost_records_.resize(size_t(ranks));
    ghost_phi_.resize(size_t(ranks));
    scratch_a_.assign(size_t(ranks) * 5 * fx_.nodes_per_face(), Real(0));
    scratch_b_.assign(size_t(ranks) * 5 * fx_.nodes_per_face(), Real(0));
    phi_scratch_.assign(size_t(ranks) * 2 * fx_.nodes_per_face(), Real(0));
    for (int r = 0; r < ranks; ++r) {
      ghost_records_[size_t(r)].assign(
          plan_.ghosts[size_t(r)].size() * fx_.nodes_per_face(),
          FaceFluxNode<Real>{});
      build_ghost_phi(r);
    }
    perf_.elements = ne;
    perf_.faces = std::int64_t(mesh_->faces().size());
    perf_.nq = ops_.nq;
    perf_.ranks = ranks;
    perf_.real_bytes = int(sizeof(Real));
  }

  const MeshGeometry& mesh() const { return *mesh_; }
  const ReferenceElement& ref() const { return ref_; }
  const Operators<Real>& ops() const { return ops_; }
  const GasConstants<double>& constants() const { return constants64_; }
  const GasConstants<Real>& gas() const { return gc_; }
  KernelSettings<Real>& settings() { return settings_; }
  const std::vector<Real>& phi() const { return phi_; }
  StateField<Real>& state() { return q_; }
  const StateField<Real>& state() const { return q_; }
  int ranks() const { return part_.ranks; }
  const Partition& partition() const { return part_; }
  const ExchangePlan& plan() const { return plan_; }
  Transport<Real>& transport() { return *transport_; }
  PerfRecord& perf() { return perf_; }
  const std::vector<RankEvents>& events() const { return events_; }
  void set_record_events(bool on) { record_events_ = on; }

  /// Initializes the state from f(x, y, z, phi, q[5]).
  template <class F>
  void init_state(F&& f) {
    const int nq = ops_.nq, n3 = ops_.n3;
    const auto& xi = ref_.nodes();
    for (std::int64_t e = 0; e < mesh_->num_elements(); ++e) {
      Real* qe = q_.element(e);
      for (int n = 0; n < n3; ++n) {
        const int a = n % nq, b = (n / nq) % nq, c = n / (nq * nq);
        const double x = mesh_->node_coordinate(e, 0, xi[size_t(a)]);
        const double y = mesh_->node_coordinate(e, 1, xi[size_t(b)]);
        const double z = mesh_->node_coordinate(e, 2, xi[size_t(c)]);
        double qv[5];
        f(x, y, z, double(phi_[size_t(e) * n3 + n]), qv);
        for (int v = 0; v < 5; ++v) qe[size_t(v) * n3 + n] = Real(qv[v]);
      }
    }
  }

  /// out <- a_old out + a_new (volume + surface + source)(q). Pass
  /// a_old = 0, a_new = 1 for a plain right-hand side.
  void assemble_rhs(const StateField<Real>& q, StateField<Real>& out,
                    Real a_old, Real a_new) {
    ++epoch_;
    ++perf_.counters.rhs_calls;
    auto job = [&](int rank) { rhs_job(rank, q, out, a_old, a_new, true); };
    pool_->run(job);
    merge_rank_counters();
  }

  /// Volume term only (ladder benchmarking and variant equivalence).
  void volume_rhs(const StateField<Real>& q, StateField<Real>& out) {
    ++epoch_;
    auto job = [&](int rank) {
      volume_phase(rank, q, out, Real(0), Real(1), false);
    };
    pool_->run(job);
    merge_rank_counters();
  }

  /// One five-stage low-storage RK step of the internal state.
  void step(Real dt) {
    auto t0 = Clock::now();
    try {
      lsrk_step<Real>(
          [&](Real a_old, Real dtc, Real /*c*/, int stage) {
            stage_ = stage;
            assemble_rhs(q_, k_, a_old, dtc);
          },
          [&](Real b) { axpy(b); }, dt);
    } catch (const NonPhysicalState& e) {
      throw e.with_stage(stage_);
    }
    ++perf_.steps;
    perf_.wall_seconds += seconds_since(t0);
  }

  double compute_dt(double courant) const {
    return compute_stable_dt(q_, phi_, *mesh_, ref_, constants64_, courant);
  }

  /// J w^3 quadrature weight of a node (64-bit).
  double node_mass(int node) const {
    const int nq = ops_.nq;
    const auto& w = ref_.weights();
    const int a = node % nq, b = (node / nq) % nq, c = node / (nq * nq);
    return mesh_->jacobian() * w[size_t(a)] * w[size_t(b)] * w[size_t(c)];
  }

private:
  using Clock = std::chrono::steady_clock;
  static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  void build_phi() {
    const int nq = ops_.nq, n3 = ops_.n3;
    const auto& xi = ref_.nodes();
    phi_.assign(size_t(mesh_->num_elements()) * n3, Real(0));
    for (std::int64_t e = 0; e < mesh_->num_elements(); ++e)
      for (int n = 0; n < n3; ++n) {
        const int c = n / (nq * nq);
        const double z = mesh_->node_coordinate(e, 2, xi[size_t(c)]);
        phi_[size_t(e) * n3 + n] = Real(constants64_.gravity * z);
      }
  }

  void build_ghost_phi(int rank) {
    const int nq2 = fx_.nodes_per_face();
    auto& gp = ghost_phi_[size_t(rank)];
    gp.assign(plan_.ghosts[size_t(rank)].size() * nq2, Real(0));
    for (const auto& g : plan_.ghosts[size_t(rank)]) {
      const Face& face = mesh_->faces()[size_t(g.face)];
      // the remote side of this face
      const std::int64_t relem =
          g.my_side == 0 ? face.plus_elem : face.minus_elem;
      const int rside = g.my_side == 0 ? 1 - face.minus_side : face.minus_side;
      extract_phi_trace(phi_.data() + size_t(relem) * ops_.n3, fx_, face.dir,
                        rside, gp.data() + size_t(g.slot) * nq2);
    }
  }

  const FluxSchedule* schedule_for(KernelVariant v) const {
    if (v == KernelVariant::Symmetric) return &sched_indexing_;
    if (v == KernelVariant::Balanced) return &sched_weighted_;
    return nullptr;
  }

  void commit_volume(std::int64_t e, const ElementWorkspace<Real>& ws,
                     StateField<Real>& out, Real a_old, Real a_new,
                     bool with_source) const {
    const int n3 = ops_.n3;
    Real* oe = out.element(e);
    const bool coriolis =
        with_source && settings_.coriolis.mode != CoriolisMode::None;
    const int nq = ops_.nq;
    for (int n = 0; n < n3; ++n) {
      Real h[5] = {Real(0), Real(0), Real(0), Real(0), Real(0)};
      if (coriolis) {
        Real qn[5];
        for (int v = 0; v < 5; ++v) qn[v] = ws.q[size_t(v) * n3 + n];
        const int b = (n / nq) % nq;
        const Real y = Real(
            mesh_->node_coordinate(e, 1, ref_.nodes()[size_t(b)]));
        coriolis_source(qn, y, settings_.coriolis, h);
      }
      for (int v = 0; v < 5; ++v) {
        const Real val = ws.tend[size_t(v) * n3 + n] + h[v];
        Real& o = oe[size_t(v) * n3 + n];
        o = (a_old == Real(0)) ? a_new * val : a_old * o + a_new * val;
      }
    }
  }

  void volume_phase(int rank, const StateField<Real>& q, StateField<Real>& out,
                    Real a_old, Real a_new, bool with_source) {
    auto t0 = Clock::now();
    ElementWorkspace<Real>& ws = ws_[size_t(rank)];
    Counters& cnt = rank_counters_[size_t(rank)];
    const FluxSchedule* sched = schedule_for(settings_.variant);
    for (std::int64_t e = part_.begin(rank); e < part_.end(rank); ++e) {
      volume_element(ws, ops_, sched, settings_, q.element(e),
                     phi_.data() + size_t(e) * ops_.n3, gc_.gamma, cnt.volume,
                     e);
      commit_volume(e, ws, out, a_old, a_new, with_source);
    }
    rank_volume_s_[size_t(rank)] += seconds_since(t0);
  }

  void rhs_job(int rank, const StateField<Real>& q, StateField<Real>& out,
               Real a_old, Real a_new, bool with_source) {
    const int nq2 = fx_.nodes_per_face();
    Counters& cnt = rank_counters_[size_t(rank)];
    Real* trace_a = scratch_a_.data() + size_t(rank) * 5 * nq2;
    Real* trace_b = scratch_b_.data() + size_t(rank) * 5 * nq2;
    RankEvents ev;

    // (1) post face traces for ghost faces
    for (const auto& g : plan_.ghosts[size_t(rank)]) {
      const Face& face = mesh_->faces()[size_t(g.face)];
      const std::int64_t own =
          g.my_side == 0 ? face.minus_elem : face.plus_elem;
      const int side = g.my_side == 0 ? face.minus_side : 1 - face.minus_side;
      extract_trace(q.element(own), fx_, face.dir, side, ops_.n3, trace_a);
      transport_->send(g.peer_inbox, trace_a, epoch_, rank, g.peer);
    }
    ev.sends_posted_ns = Transport<Real>::now_ns();

    // (2) volume term overlaps the exchange
    ev.volume_start_ns = Transport<Real>::now_ns();
    volume_phase(rank, q, out, a_old, a_new, with_source);
    ev.volume_end_ns = Transport<Real>::now_ns();

    auto t0 = Clock::now();
    // (3) intra-rank face fluxes
    for (std::int32_t f : plan_.interior[size_t(rank)]) {
      const Face& face = mesh_->faces()[size_t(f)];
      FaceFluxNode<Real>* rec = face_records_.data() + size_t(f) * nq2;
      extract_trace(q.element(face.minus_elem), fx_, face.dir, face.minus_side,
                    ops_.n3, trace_a);
      extract_phi_trace(phi_.data() + size_t(face.minus_elem) * ops_.n3, fx_,
                        face.dir, face.minus_side, phi_scratch_a(rank));
      if (face.reflecting) {
        compute_face_record<Real>(trace_a, phi_scratch_a(rank), nullptr,
                                  nullptr, face.dir, nq2, gc_,
                                  settings_.dissipation, rec, cnt.surface,
                                  face.minus_elem, face.minus_elem);
      } else {
        extract_trace(q.element(face.plus_elem), fx_, face.dir,
                      1 - face.minus_side, ops_.n3, trace_b);
        extract_phi_trace(phi_.data() + size_t(face.plus_elem) * ops_.n3, fx_,
                          face.dir, 1 - face.minus_side, phi_scratch_b(rank));
        compute_face_record<Real>(trace_a, phi_scratch_a(rank), trace_b,
                                  phi_scratch_b(rank), face.dir, nq2, gc_,
                                  settings_.dissipation, rec, cnt.surface,
                                  face.minus_elem, face.plus_elem);
      }
    }

    // (4) wait for ghost traces, then their face fluxes
    std::int64_t last_arrival = 0;
    for (const auto& g : plan_.ghosts[size_t(rank)]) {
      const Face& face = mesh_->faces()[size_t(g.face)];
      const Real* other = transport_->wait(g.my_inbox, epoch_);
      last_arrival = std::max(last_arrival, transport_->arrival_ns(g.my_inbox));
      const std::int64_t own =
          g.my_side == 0 ? face.minus_elem : face.plus_elem;
      const int side = g.my_side == 0 ? face.minus_side : 1 - face.minus_side;
      extract_trace(q.element(own), fx_, face.dir, side, ops_.n3, trace_a);
      extract_phi_trace(phi_.data() + size_t(own) * ops_.n3, fx_, face.dir,
                        side, phi_scratch_a(rank));
      const Real* gphi = ghost_phi_[size_t(rank)].data() + size_t(g.slot) * nq2;
      FaceFluxNode<Real>* rec =
          ghost_records_[size_t(rank)].data() + size_t(g.slot) * nq2;
      // canonical orientation: minus side first
      if (g.my_side == 0) {
        compute_face_record<Real>(trace_a, phi_scratch_a(rank), other, gphi,
                                  face.dir, nq2, gc_, settings_.dissipation,
                                  rec, cnt.surface, face.minus_elem,
                                  face.plus_elem);
      } else {
        compute_face_record<Real>(other, gphi, trace_a, phi_scratch_a(rank),
                                  face.dir, nq2, gc_, settings_.dissipation,
                                  rec, cnt.surface, face.minus_elem,
                                  face.plus_elem);
      }
    }
    ev.wait_end_ns = Transport<Real>::now_ns();
    ev.last_arrival_ns = last_arrival;

    // (5) per-element commit in fixed face order
    for (std::int64_t e = part_.begin(rank); e < part_.end(rank); ++e) {
      for (int lf = 0; lf < 6; ++lf) {
        const std::int32_t fid = mesh_->face_of(e, lf);
        const Face& face = mesh_->faces()[size_t(fid)];
        const int dir = lf / 2, side = lf % 2;
        const bool am_minus =
            face.minus_elem == e && face.minus_side == side;
        const std::int32_t gslot = plan_.ghost_slot[size_t(rank)][size_t(fid)];
        const FaceFluxNode<Real>* rec =
            gslot >= 0
                ? ghost_records_[size_t(rank)].data() + size_t(gslot) * nq2
                : face_records_.data() + size_t(fid) * nq2;
        commit_face_side(out, q, phi_, rec, fx_, ops_, e, dir, side, am_minus,
                         gc_.gamma, a_new, cnt.surface);
      }
    }
    rank_surface_s_[size_t(rank)] += seconds_since(t0);
    if (record_events_) events_[size_t(rank)] = ev;
  }

  void axpy(Real b) {
    auto t0 = Clock::now();
    auto job = [&](int rank) {
      const size_t lo = size_t(part_.begin(rank)) * 5 * ops_.n3;
      const size_t hi = size_t(part_.end(rank)) * 5 * ops_.n3;
      Real* q = q_.data.data();
      const Real* k = k_.data.data();
      for (size_t i = lo; i < hi; ++i) q[i] += b * k[i];
    };
    pool_->run(job);
    perf_.update_seconds += seconds_since(t0);
  }

  void merge_rank_counters() {
    for (auto& c : rank_counters_) {
      perf_.counters.volume += c.volume;
      perf_.counters.surface += c.surface;
      c.reset();
    }
    for (auto& s : rank_volume_s_) {
      perf_.volume_seconds += s;
      s = 0.0;
    }
    for (auto& s : rank_surface_s_) {
      perf_.surface_seconds += s;
      s = 0.0;
    }
  }

  Real* phi_scratch_a(int rank) {
    return phi_scratch_.data() + size_t(rank) * 2 * fx_.nodes_per_face();
  }
  Real* phi_scratch_b(int rank) {
    return phi_scratch_a(rank) + fx_.nodes_per_face();
  }

  std::shared_ptr<const MeshGeometry> mesh_;
  ReferenceElement ref_;
  GasConstants<double> constants64_;
  GasConstants<Real> gc_;
  KernelSettings<Real> settings_;
  Operators<Real> ops_;
  FaceIndexer fx_;
  FluxSchedule sched_indexing_, sched_weighted_;
  Partition part_;
  ExchangePlan plan_;
  StateField<Real> q_, k_;
  std::vector<Real> phi_;
  std::unique_ptr<WorkerPool> pool_;
  std::unique_ptr<Transport<Real>> transport_;
  std::vector<ElementWorkspace<Real>> ws_;
  std::vector<Counters> rank_counters_;
  std::vector<double> rank_volume_s_, rank_surface_s_;
  std::vector<FaceFluxNode<Real>> face_records_;
  std::vector<std::vector<FaceFluxNode<Real>>> ghost_records_;
  std::vector<std::vector<Real>> ghost_phi_;
  std::vector<Real> scratch_a_, scratch_b_;
  std::vector<Real> phi_scratch_;
  std::vector<RankEvents> events_;
  PerfRecord perf_;
  std::uint64_t epoch_ = 0;
  int stage_ = -1;
  bool record_events_ = false;
};

} // namespace esdg
