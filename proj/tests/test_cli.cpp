#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "lexeval/cli.hpp"
#include "lexeval/error_miner.hpp"

using namespace lexeval;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("lexeval_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    std::ofstream(path / name, std::ios::binary) << content;
    return (path / name).string();
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kRef =
    "kidnapper\tV\tkidnapper__1\tSuj:NP;Obj:NP\tACTIVE,PASSIVE\tcoded\tlefff:1\n"
    "parer\tV\tparer__1\tSuj:NP;Obj:NP\tACTIVE,PASSIVE\tcoded\tlefff:3\n"
    "voir\tV\tvoir__1\tSuj:NP;Obj?:NP|FINITE-CLAUSE\tACTIVE,PASSIVE\tcoded\tlefff:2\n";
const char* kOther =
    "kidnapper\tV\tkidnapper__1\tSuj:NP;Obj:NP;Obja:PP(à)\tACTIVE\tcoded\tlglex:36DT\n"
    "voir\tV\tvoir__1\tSuj:NP;Obj:NP\tACTIVE\tcoded\tlglex:1\n"
    "voir\tV\tvoir__2\tSuj:NP;Loc:PP(sur)\tACTIVE\tcoded\tlglex:2\n";
const char* kCorpus =
    "s1\tvoir\tACTIVE\tSuj:NP;Obj:NP\n"
    "s2\tkidnapper\tACTIVE\tSuj:NP;Obj:NP\n"
    "s3\tparer\tPASSIVE\tObj:NP\n"
    "s4\tvoir\tACTIVE\tSuj:NP\n"
    "s4\tparer\tACTIVE\tSuj:NP;Obj:NP\n";

std::string body(const std::string& report) {
  std::string out;
  std::istringstream in(report);
  for (std::string line; std::getline(in, line);)
    if (!line.starts_with("# ")) out += line + '\n';
  return out;
}

}  // namespace

TEST_CASE("lex parse and stats print to stdout without --out") {
  TempDir d;
  const auto lex = d.file("ref.lex", kRef);
  auto r = run({"lex", "parse", lex});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("# lexeval 0.1.0\n# command: lex parse\n# input: " + lex + "\n"));
  CHECK(body(r.out) == kRef);
  r = run({"lex", "stats", lex, "--top-k", "2"});
  CHECK(r.code == 0);
  CHECK(body(r.out) == "lemmas\t3\nentries\t3\nmax_entries_per_lemma\t1\n#rank\tlemma\tentries\n1\tkidnapper\t1\n2\tparer\t1\n");
}

TEST_CASE("merge writes the lexicon, report and queue") {
  TempDir d;
  const auto ref = d.file("ref.lex", kRef);
  const auto other = d.file("other.lex", kOther);
  const auto r = run({"merge", ref, other, "--out", d / "out"});
  REQUIRE(r.code == 0);
  std::ifstream report(d / "out/merge_report.tsv");
  std::stringstream ss;
  ss << report.rdbuf();
  const auto text = body(ss.str());
  CHECK(text.find("kidnapper\t1\t1\t2\tvalidate\n") != std::string::npos);  // Obja breaks the base match
  CHECK(text.find("voir\t1\t2\t2\tok\n") != std::string::npos);
  CHECK(text.find("parer\t1\t0\t1\tok\n") != std::string::npos);
  CHECK(text.find("#TOTALS\tlemmas=3\t") != std::string::npos);
  CHECK(fs::exists(d / "out/merged.lex"));
  CHECK(fs::exists(d / "out/validation_queue.txt"));
  for (const auto& e : fs::directory_iterator(d / "out")) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("reports are byte-identical across runs") {
  TempDir d;
  const auto ref = d.file("ref.lex", kRef);
  const auto other = d.file("other.lex", kOther);
  REQUIRE(run({"merge", ref, other, "--out", d / "a"}).code == 0);
  REQUIRE(run({"merge", ref, other, "--out", d / "b"}).code == 0);
  for (const auto* name : {"merged.lex", "merge_report.tsv", "validation_queue.txt"}) {
    std::ifstream a(d / (std::string("a/") + name)), b(d / (std::string("b/") + name));
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }
}

TEST_CASE("check then mine locates a missing lemma") {
  TempDir d;
  const auto ref = d.file("ref.lex", kRef);
  std::string without_parer = kRef;
  without_parer.erase(without_parer.find("parer"), without_parer.find("voir") - without_parer.find("parer"));
  const auto hyp = d.file("hyp.lex", without_parer);
  const auto corpus = d.file("corpus.tsv", kCorpus);

  auto r = run({"check", "--lexicon", ref, "--corpus", corpus, "--out", d / "ref"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("coverage 4/4 (100.00%)") != std::string::npos);
  r = run({"check", "--lexicon", hyp, "--corpus", corpus, "--out", d / "hyp"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("coverage 2/4 (50.00%)") != std::string::npos);

  std::ifstream hist(d / "hyp/histogram.tsv");
  std::stringstream hs;
  hs << hist.rdbuf();
  CHECK(body(hs.str()).find("MISSING-LEMMA\t2\n") != std::string::npos);

  r = run({"mine", "--ref", d / "ref/records.tsv", "--hyp", d / "hyp/records.tsv", "--out", d / "mine"});
  REQUIRE(r.code == 0);
  std::ifstream sus(d / "mine/suspects.tsv");
  std::stringstream ss;
  ss << sus.rdbuf();
  const auto text = ss.str();
  CHECK(text.find("# command: mine\n") != std::string::npos);
  CHECK(text.find("# epsilon: 1e-09\n# max-iter: 200\n") != std::string::npos);
  CHECK(text.find("# converged: yes\n") != std::string::npos);
  CHECK(body(text).starts_with("#rank\tform\tscore\tfailed_sentences\tsample_sentence_id\n1\tparer\t1.000000\t2\ts3\n"));

  // the written mining corpus is accepted by --corpus and gives the same ranking
  r = run({"mine", "--corpus", d / "mine/mining_corpus.tsv", "--top-k", "1"});
  REQUIRE(r.code == 0);
  CHECK(body(r.out).find("1\tparer\t") != std::string::npos);
  CHECK(body(r.out).find("\n2\t") == std::string::npos);
}

TEST_CASE("eval with hyp = gold") {
  TempDir d;
  const std::string doc =
      "<S id=\"s1\"><W ix=\"0\">Le</W><W ix=\"1\">chat</W><W ix=\"2\">dort</W>"
      "<G type=\"GN\" start=\"0\" end=\"2\"/><G type=\"NV\" start=\"2\" end=\"3\"/>"
      "<R type=\"SUJ-V\" src=\"1\" tgt=\"2\"/></S>\n";
  const auto gold = d.file("gold.xml", doc);
  auto r = run({"eval", gold, gold, "--mode", "overlap", "--label", "self", "--out", d / "ev"});
  REQUIRE(r.code == 0);
  std::ifstream in(d / "ev/eval.tsv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("# mode: overlap\n") != std::string::npos);
  std::string expected_row = "self\t1\t100.00\t100.00\t100.00";
  for (int i = 0; i < 14; ++i) expected_row += "\t100.00";
  CHECK(body(ss.str()).find(expected_row + "\n") != std::string::npos);
  CHECK(fs::exists(d / "ev/eval_detail.tsv"));

  r = run({"eval", gold, gold, "--mode", "fuzzy"});
  CHECK(r.code != 0);
}

TEST_CASE("freq") {
  TempDir d;
  const auto f = d.file("freq.tsv", "mange\t5\nmangeons\t3\nva\t7\nzzz\t9\n");
  const auto m = d.file("map.tsv", "mange\tmanger\nmangeons\tmanger\nva\taller\n");
  const auto r = run({"freq", f, m, "--n", "1"});
  CHECK(r.code == 0);
  CHECK(body(r.out) == "#rank\tlemma\tfrequency\n1\tmanger\t8\n");
  CHECK(r.err.find("1 forms without a lemma") != std::string::npos);
  CHECK(r.out.find("without") == std::string::npos);
}

TEST_CASE("errors name the file and line") {
  TempDir d;
  const auto bad = d.file("bad.lex", std::string(kRef) + "tenir\tV\ttenir__1\tSuj:XP\tACTIVE\tcoded\tl:1\n");
  auto r = run({"lex", "parse", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find(bad + ":4:") != std::string::npos);

  r = run({"lex", "parse", d / "missing.lex"});
  CHECK(r.code == 1);
  CHECK(r.err.find("missing.lex") != std::string::npos);

  const auto corpus = d.file("c.tsv", "s1\tvoir\tACTIVE\tSuj:NP\ns2\tvoir\tSOMETIMES\tSuj:NP\n");
  r = run({"check", "--lexicon", d.file("ok.lex", kRef), "--corpus", corpus, "--out", d / "x"});
  CHECK(r.code == 1);
  CHECK(r.err.find(corpus + ":2:") != std::string::npos);

  r = run({"mine"});
  CHECK(r.code != 0);
  r = run({"mine", "--corpus", corpus, "--ref", corpus, "--hyp", corpus});
  CHECK(r.code != 0);
  r = run({"frobnicate"});
  CHECK(r.code != 0);
  r = run({"merge", d / "ok.lex", d / "ok.lex"});  // --out is required
  CHECK(r.code != 0);
}

TEST_CASE("version") {
  const auto r = run({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}
