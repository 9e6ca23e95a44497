#include "wecg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wecg/codec.hpp"
#include "wecg/container.hpp"
#include "wecg/error.hpp"
#include "wecg/metrics.hpp"
#include "wecg/parallel.hpp"
#include "wecg/signal_io.hpp"
#include "wecg/tuner.hpp"

namespace wecg::cli {
namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct InputOptions {
  std::string format = "auto";
  int channel = 0;
  std::size_t samples = 0;  // 0 = whole file
  double baseline = 0.0;
  int adc_bits = kDefaultAdcBits;
  double sample_rate = kDefaultSampleRateHz;
};

void add_input_options(CLI::App& app, InputOptions& in) {
  app.add_option("--format", in.format, "Input format")->check(CLI::IsMember({"auto", "212", "text"}));
  app.add_option("--channel", in.channel, "Format-212 channel")->check(CLI::IsMember({0, 1}));
  app.add_option("--samples", in.samples, "Samples to read from a format-212 file (default: all)");
  app.add_option("--baseline", in.baseline, "Baseline subtracted from every sample");
  app.add_option("--adc-bits", in.adc_bits, "Bits per raw sample")->check(CLI::Range(8, 32));
  app.add_option("--fs", in.sample_rate, "Sample rate for format-212 input")->check(CLI::PositiveNumber);
}

std::string record_id_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

Signal load_signal(const std::string& path, const InputOptions& in) {
  std::string format = in.format;
  if (format == "auto") format = std::filesystem::path(path).extension() == ".dat" ? "212" : "text";
  Signal s;
  if (format == "212") {
    const std::vector<std::uint8_t> bytes = signal_io::read_file_bytes(path);
    const std::size_t n = in.samples > 0 ? in.samples : bytes.size() / 3;
    if (n == 0) fail(ErrorCode::short_read, "short read: '" + path + "' holds no format-212 frames");
    s = signal_io::read_format212(bytes, in.channel, n);
    s.sample_rate_hz = in.sample_rate;
    s.adc_bits = in.adc_bits;
  } else {
    std::ifstream file(path);
    if (!file) fail(ErrorCode::io_error, "cannot open '" + path + "'");
    s = signal_io::read_text(file);
    if (in.samples > 0 && in.samples < s.samples.size()) s.samples.resize(in.samples);
  }
  if (s.record_id.empty()) s.record_id = record_id_of(path);
  if (in.baseline != 0.0) s = signal_io::subtract_baseline(std::move(s), in.baseline);
  return s;
}

struct CodecOptions {
  std::string mode = "a";
  double delta = 35.0;
  double prd0 = 0.0;
  int levels = 4;
  std::string entropy = "none";
  std::string index = "delta";
};

void add_codec_options(CLI::App& app, CodecOptions& c) {
  app.add_option("--mode", c.mode, "a: select largest then quantize; b: quantize only")
      ->check(CLI::IsMember({"a", "b", "A", "B"}));
  app.add_option("--delta", c.delta, "Quantization step")->check(CLI::PositiveNumber);
  app.add_option("--prd0", c.prd0, "Mode a: PRD target of the selection step, percent")->check(CLI::NonNegativeNumber);
  app.add_option("--levels", c.levels, "Wavelet decomposition levels")->check(CLI::Range(1, dwt::kMaxLevels));
  app.add_option("--entropy", c.entropy, "Entropy stage")->check(CLI::IsMember({"none", "huffman"}));
  app.add_option("--index", c.index, "Index storage")->check(CLI::IsMember({"delta", "rl"}));
}

Mode parse_mode(const std::string& m) { return (m == "b" || m == "B") ? Mode::B : Mode::A; }

CodecParams params_of(const CodecOptions& c) {
  CodecParams p;
  p.mode = parse_mode(c.mode);
  p.delta = c.delta;
  p.prd0_percent = c.prd0;
  p.levels = c.levels;
  return p;
}

container::EntropyMode entropy_of(const CodecOptions& c) {
  return c.entropy == "huffman" ? container::EntropyMode::huffman : container::EntropyMode::none;
}
container::IndexMode index_of(const CodecOptions& c) {
  return c.index == "rl" ? container::IndexMode::run_length : container::IndexMode::delta;
}

int exit_code_for(const Error& e, bool archive_input) {
  switch (e.code()) {
    case ErrorCode::invalid_argument:
    case ErrorCode::unrepresentable:
      return kUsage;
    case ErrorCode::io_error:
    case ErrorCode::parse_error:
      return kIo;
    case ErrorCode::short_read:
      return archive_input ? kCorrupt : kIo;
    case ErrorCode::bad_magic:
    case ErrorCode::version_mismatch:
    case ErrorCode::inflate_failure:
    case ErrorCode::corrupt_archive:
      return kCorrupt;
  }
  return kIo;
}

// --- compress ---------------------------------------------------------------

struct CompressArgs {
  std::string input;
  std::string output;
  InputOptions in;
  CodecOptions codec;
};

int cmd_compress(const CompressArgs& a, std::ostream& out) {
  const Signal s = load_signal(a.input, a.in);
  const CodecParams params = params_of(a.codec);
  const QuantizedSet q = codec::encode(s, params);
  const std::vector<std::uint8_t> bytes = container::serialize(q, entropy_of(a.codec), index_of(a.codec));
  signal_io::write_file_bytes(a.output, bytes);

  const Signal rec = codec::decode(q);
  out << "output=" << a.output << '\n'
      << "n=" << s.size() << '\n'
      << "k=" << q.k() << '\n'
      << "bytes=" << bytes.size() << '\n'
      << "cr=" << num(metrics::compression_ratio(s.size(), s.adc_bits, bytes.size())) << '\n';
  const bool nonzero = std::any_of(s.samples.begin(), s.samples.end(), [](double v) { return v != 0.0; });
  if (nonzero) out << "prd=" << num(metrics::prd(s.samples, rec.samples)) << '\n';
  return kOk;
}

// --- decompress -------------------------------------------------------------

struct DecompressArgs {
  std::string input;
  std::string output;
  double baseline = 0.0;
  double sample_rate = kDefaultSampleRateHz;
  int adc_bits = kDefaultAdcBits;
};

int cmd_decompress(const DecompressArgs& a, std::ostream& out) {
  const std::vector<std::uint8_t> bytes = signal_io::read_file_bytes(a.input);
  const QuantizedSet q = container::deserialize(bytes);
  Signal s = codec::decode(q);
  if (a.baseline != 0.0) s = signal_io::subtract_baseline(std::move(s), -a.baseline);
  s.sample_rate_hz = a.sample_rate;
  s.adc_bits = a.adc_bits;
  std::ofstream file(a.output, std::ios::trunc);
  if (!file) fail(ErrorCode::io_error, "cannot create '" + a.output + "'");
  signal_io::write_text(file, s);
  if (!file) fail(ErrorCode::io_error, "error writing '" + a.output + "'");
  out << "output=" << a.output << '\n' << "n=" << s.size() << '\n';
  return kOk;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  std::string original;
  std::string reconstructed;
  std::string archive;
  InputOptions in;
  std::size_t segment_length = metrics::kDefaultSegmentLength;
  bool csv = false;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const Signal f = load_signal(a.original, a.in);
  Signal fr;
  std::uint64_t archive_bytes = 0;
  if (!a.archive.empty()) {
    const std::vector<std::uint8_t> bytes = signal_io::read_file_bytes(a.archive);
    archive_bytes = bytes.size();
    if (a.reconstructed.empty()) fr = codec::decode(container::deserialize(bytes));
  }
  if (!a.reconstructed.empty()) {
    InputOptions rec_in;
    rec_in.format = "text";
    fr = load_signal(a.reconstructed, rec_in);
  }
  if (fr.samples.empty()) fail(ErrorCode::invalid_argument, "evaluate needs --reconstructed or --archive");

  metrics::QualityReport r;
  if (archive_bytes > 0) {
    r = metrics::evaluate(f.samples, fr.samples, f.adc_bits, archive_bytes, a.segment_length);
  } else {
    // No archive: distortion only.
    r.prd = metrics::prd(f.samples, fr.samples);
    r.prdn = metrics::prdn(f.samples, fr.samples);
    const metrics::LocalPrd local = metrics::local_prd(f.samples, fr.samples, a.segment_length);
    r.local_mean = local.mean;
    r.local_std = local.std;
    r.worst_segment_index = local.worst_segment;
    r.worst_segment_prd = local.worst_prd;
    r.segment_length = local.segment_length;
    r.segment_count = local.segment_count;
  }
  r.record_id = f.record_id;
  if (a.csv) {
    metrics::write_csv_header(out);
    metrics::write_csv_row(out, r);
  } else {
    out << "record=" << r.record_id << '\n'
        << "prd=" << num(r.prd) << '\n'
        << "prdn=" << num(r.prdn) << '\n'
        << "cr=" << num(r.cr) << '\n'
        << "qs=" << num(r.qs) << '\n'
        << "local_mean=" << num(r.local_mean) << '\n'
        << "local_std=" << num(r.local_std) << '\n'
        << "q_star=" << r.worst_segment_index << '\n'
        << "q_star_prd=" << num(r.worst_segment_prd) << '\n'
        << "segment_length=" << r.segment_length << '\n'
        << "segment_count=" << r.segment_count << '\n';
  }
  return kOk;
}

// --- tune -------------------------------------------------------------------

struct TuneArgs {
  std::vector<std::string> inputs;
  InputOptions in;
  std::string mode = "a";
  tuner::TuneSpec spec;
};

int cmd_tune(const TuneArgs& a, std::ostream& out) {
  std::vector<Signal> records;
  for (const std::string& path : a.inputs) records.push_back(load_signal(path, a.in));
  tuner::TuneSpec spec = a.spec;
  spec.mode = parse_mode(a.mode);
  const tuner::CorpusResult r = tuner::tune_corpus(records, spec);
  out << "mode=" << (r.params.mode == Mode::A ? "a" : "b") << '\n'
      << "delta=" << num(r.params.delta) << '\n'
      << "prd0=" << num(r.params.prd0_percent) << '\n'
      << "levels=" << r.params.levels << '\n'
      << "mean_prd=" << num(r.mean_prd) << '\n'
      << "converged=" << (r.converged ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < records.size(); ++i)
    out << "prd[" << records[i].record_id << "]=" << num(r.record_prd[i]) << '\n';
  return kOk;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> inputs;
  std::string dir;
  std::vector<std::string> records;
  InputOptions in;
  CodecOptions codec;
  double target_prd = 0.0;
  double prd0_fraction = 0.75;
  int repeat = 1;
  int jobs = 1;
  std::size_t segment_length = metrics::kDefaultSegmentLength;
  std::string out;
};

struct BenchRow {
  std::string record;
  metrics::QualityReport report;
  double t_compress = 0.0;
  double t_recover = 0.0;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BenchRow bench_record(const Signal& s, const CodecParams& params, container::EntropyMode entropy,
                      container::IndexMode index, int repeat, std::size_t segment_length) {
  BenchRow row;
  row.record = s.record_id;
  std::vector<std::uint8_t> bytes;
  Signal rec;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = Clock::now();
    bytes = container::serialize(codec::encode(s, params), entropy, index);
    row.t_compress += seconds_since(t0);
    const auto t1 = Clock::now();
    rec = codec::decode(container::deserialize(bytes));
    row.t_recover += seconds_since(t1);
  }
  row.t_compress /= repeat;
  row.t_recover /= repeat;
  row.report = metrics::evaluate(s.samples, rec.samples, s.adc_bits, bytes.size(), segment_length);
  row.report.record_id = s.record_id;
  return row;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "record,prd_local_mean,prd_local_std,prd,prdn,cr,qs,qstar,t_compress_s,t_recover_s\n";
  // Numeric columns except qstar, which is per record only.
  auto values = [](const BenchRow& row) {
    const metrics::QualityReport& r = row.report;
    return std::vector<double>{r.local_mean, r.local_std, r.prd, r.prdn, r.cr, r.qs, row.t_compress, row.t_recover};
  };
  auto line = [&](const std::string& name, const std::vector<double>& v, const std::string& qstar) {
    out << name;
    for (std::size_t i = 0; i < 6; ++i) out << ',' << num(v[i]);
    out << ',' << qstar << ',' << num(v[6]) << ',' << num(v[7]) << '\n';
  };
  for (const BenchRow& row : rows) line(row.record, values(row), std::to_string(row.report.worst_segment_index));
  if (rows.empty()) return;

  const std::size_t cols = 8;
  std::vector<double> mean(cols, 0.0), stdev(cols, 0.0);
  for (const BenchRow& row : rows) {
    const auto v = values(row);
    for (std::size_t c = 0; c < cols; ++c) mean[c] += v[c];
  }
  for (double& m : mean) m /= static_cast<double>(rows.size());
  if (rows.size() > 1) {
    for (const BenchRow& row : rows) {
      const auto v = values(row);
      for (std::size_t c = 0; c < cols; ++c) stdev[c] += (v[c] - mean[c]) * (v[c] - mean[c]);
    }
    for (double& sd : stdev) sd = std::sqrt(sd / static_cast<double>(rows.size() - 1));
  }
  line("mean", mean, "");
  line("std", stdev, "");
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::string> paths = a.inputs;
  for (const std::string& id : a.records) {
    std::filesystem::path p = std::filesystem::path(a.dir.empty() ? "." : a.dir) / id;
    if (!p.has_extension()) p += ".dat";
    paths.push_back(p.string());
  }
  if (paths.empty()) fail(ErrorCode::invalid_argument, "bench needs input files or --records");

  std::vector<Signal> signals(paths.size());
  parallel_for(paths.size(), [&](std::size_t i) { signals[i] = load_signal(paths[i], a.in); }, a.jobs);

  CodecParams params = params_of(a.codec);
  if (a.target_prd > 0.0) {
    tuner::TuneSpec spec;
    spec.target_prd = a.target_prd;
    spec.mode = params.mode;
    spec.prd0_fraction = a.prd0_fraction;
    spec.levels = params.levels;
    const tuner::CorpusResult tuned = tuner::tune_corpus(signals, spec);
    params = tuned.params;
    err << "tuned: delta=" << num(params.delta) << " prd0=" << num(params.prd0_percent)
        << " mean_prd=" << num(tuned.mean_prd) << (tuned.converged ? "" : " (not converged)") << '\n';
  }

  std::vector<BenchRow> rows(signals.size());
  parallel_for(
      signals.size(),
      [&](std::size_t i) {
        rows[i] = bench_record(signals[i], params, entropy_of(a.codec), index_of(a.codec), a.repeat, a.segment_length);
      },
      a.jobs);
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& x, const BenchRow& y) { return x.record < y.record; });

  if (a.out.empty()) {
    write_bench_csv(out, rows);
  } else {
    std::ofstream file(a.out, std::ios::trunc);
    if (!file) fail(ErrorCode::io_error, "cannot create '" + a.out + "'");
    write_bench_csv(file, rows);
    if (!file) fail(ErrorCode::io_error, "error writing '" + a.out + "'");
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wavelet ECG codec: compress, decompress, evaluate, tune and benchmark records"};
  app.require_subcommand(1);

  CompressArgs compress;
  auto* c = app.add_subcommand("compress", "Encode a record into a .wecg archive");
  c->add_option("input", compress.input, "Input record (.dat = format 212, otherwise text)")->required();
  c->add_option("-o,--output", compress.output, "Archive path")->required();
  add_input_options(*c, compress.in);
  add_codec_options(*c, compress.codec);

  DecompressArgs decompress;
  auto* d = app.add_subcommand("decompress", "Decode an archive to a text signal");
  d->add_option("input", decompress.input, "Archive path")->required();
  d->add_option("-o,--output", decompress.output, "Text output path")->required();
  d->add_option("--baseline", decompress.baseline, "Baseline added back to every sample");
  d->add_option("--fs", decompress.sample_rate, "Sample rate written to the header")->check(CLI::PositiveNumber);
  d->add_option("--adc-bits", decompress.adc_bits, "adc_bits written to the header")->check(CLI::Range(8, 32));

  EvaluateArgs evaluate;
  auto* e = app.add_subcommand("evaluate", "Quality report of a reconstruction");
  e->add_option("original", evaluate.original, "Original record")->required();
  e->add_option("--reconstructed", evaluate.reconstructed, "Reconstructed text signal");
  e->add_option("--archive", evaluate.archive, "Archive (for CR; decoded when --reconstructed is absent)");
  e->add_option("--segment-length", evaluate.segment_length, "Local PRD segment length")->check(CLI::PositiveNumber);
  e->add_flag("--csv", evaluate.csv, "Emit a CSV row instead of key=value lines");
  add_input_options(*e, evaluate.in);

  TuneArgs tune;
  auto* t = app.add_subcommand("tune", "Find delta for a target (mean) PRD");
  t->add_option("inputs", tune.inputs, "Records sharing one delta")->required();
  t->add_option("--target-prd", tune.spec.target_prd, "Target PRD, percent")->required()->check(CLI::PositiveNumber);
  t->add_option("--mode", tune.mode, "a or b")->check(CLI::IsMember({"a", "b", "A", "B"}));
  t->add_option("--prd0-fraction", tune.spec.prd0_fraction, "Mode a: prd0 as a fraction of the target")
      ->check(CLI::Range(0.0, 1.0));
  t->add_option("--tolerance", tune.spec.tolerance_percent, "Accepted error, percent of target")->check(CLI::PositiveNumber);
  t->add_option("--max-iters", tune.spec.max_iters, "Bisection iterations")->check(CLI::PositiveNumber);
  t->add_option("--levels", tune.spec.levels, "Wavelet decomposition levels")->check(CLI::Range(1, dwt::kMaxLevels));
  add_input_options(*t, tune.in);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Per-record CSV of PRD, CR, QS and timings");
  b->add_option("inputs", bench.inputs, "Record files");
  b->add_option("--dir", bench.dir, "Directory holding <record>.dat files");
  b->add_option("--records", bench.records, "Record ids, e.g. 100,101")->delimiter(',');
  b->add_option("--target-prd", bench.target_prd, "Tune one shared delta to this mean PRD")->check(CLI::PositiveNumber);
  b->add_option("--prd0-fraction", bench.prd0_fraction, "Mode a with --target-prd: prd0 fraction")
      ->check(CLI::Range(0.0, 1.0));
  b->add_option("--repeat", bench.repeat, "Runs averaged for timings")->check(CLI::PositiveNumber);
  b->add_option("--jobs", bench.jobs, "Records processed concurrently")->check(CLI::PositiveNumber);
  b->add_option("--segment-length", bench.segment_length, "Local PRD segment length")->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "CSV output path (default stdout)");
  add_input_options(*b, bench.in);
  add_codec_options(*b, bench.codec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return kUsage;
  }

  const bool archive_input = d->parsed() || (e->parsed() && !evaluate.archive.empty());
  try {
    if (c->parsed()) return cmd_compress(compress, out);
    if (d->parsed()) return cmd_decompress(decompress, out);
    if (e->parsed()) return cmd_evaluate(evaluate, out);
    if (t->parsed()) return cmd_tune(tune, out);
    if (b->parsed()) return cmd_bench(bench, out, err);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code_for(ex, archive_input);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kIo;
  }
  return kUsage;
}

}  // namespace wecg::cli
