// Black-box tests of the command line binary: byte-exact outputs, exit codes,
// file output, and the split/integrate round trip. Run as:
//   test_cli <path-to-ncad> <path-to-golden-dir>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "  ok: " << what << "\n";
  } else {
    ++g_failures;
    std::cout << "  FAILED: " << what << "\n";
  }
}

struct RunResult {
  std::string out;
  int code = -1;
};

RunResult run_command(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: test_cli <ncad-binary> <golden-dir>\n";
    return 2;
  }
  const std::string ncad = argv[1];
  const std::filesystem::path golden = argv[2];
  const std::filesystem::path tmp =
      std::filesystem::temp_directory_path() /
      ("ncad_cli_test_" + std::to_string(static_cast<long>(getpid())));
  std::filesystem::create_directories(tmp);

  {
    std::cout << "symbolic split of the square\n";
    RunResult r = run_command(ncad + " delta --slot 0 --poly " + (golden / "x2.json").string());
    expect(r.code == 0, "exit code 0");
    expect(r.out == read_file(golden / "delta_x2.expected.json"), "byte-identical output");
  }

  {
    std::cout << "evaluation at an upper triangular point\n";
    RunResult r = run_command(ncad + " eval --poly " + (golden / "x2.json").string() +
                              " --points " + (golden / "x2_points.json").string());
    expect(r.code == 0, "exit code 0");
    expect(r.out == read_file(golden / "eval_x2.expected.json"), "byte-identical output");
  }

  {
    std::cout << "refusing to integrate x*z\n";
    RunResult r = run_command(ncad + " integrate-poly --slot 0 --poly " +
                              (golden / "xz.json").string());
    expect(r.code == 1, "exit code 1 (mathematical negative)");
    expect(r.out == read_file(golden / "integrate_poly_xz.expected.json"),
           "byte-identical error object");
  }

  {
    std::cout << "split then integrate returns the original polynomial\n";
    const std::string split_path = (tmp / "dx2.json").string();
    RunResult split = run_command(ncad + " delta --slot 0 --poly " +
                                  (golden / "x2.json").string() + " --output " + split_path);
    expect(split.code == 0, "split exit code 0");
    expect(split.out.empty(), "nothing on stdout when --output is given");
    RunResult back = run_command(ncad + " integrate-poly --slot 0 --poly " + split_path);
    expect(back.code == 0, "integrate exit code 0");
    expect(back.out == read_file(golden / "x2.json"), "round trip reproduces the input bytes");
  }

  {
    std::cout << "file output matches standard output\n";
    const std::string out_path = (tmp / "eval.json").string();
    RunResult r = run_command(ncad + " eval --poly " + (golden / "x2.json").string() +
                              " --points " + (golden / "x2_points.json").string() +
                              " --output " + out_path);
    expect(r.code == 0, "exit code 0");
    expect(read_file(out_path) == read_file(golden / "eval_x2.expected.json"),
           "written file is byte-identical");
  }

  {
    std::cout << "usage errors\n";
    RunResult unknown = run_command(ncad + " frobnicate");
    expect(unknown.code == 2, "unknown subcommand exits 2");
    expect(unknown.out.find("UsageError") != std::string::npos, "UsageError object emitted");
    RunResult missing = run_command(ncad + " delta --slot 0 --poly /no/such/file.json");
    expect(missing.code == 2, "unreadable input exits 2");
    expect(missing.out.find("ParseError") != std::string::npos, "ParseError object emitted");
    RunResult schema = run_command(ncad + " eval --poly " + (golden / "x2_points.json").string() +
                                   " --points " + (golden / "x2_points.json").string());
    expect(schema.code == 2, "wrong schema exits 2");
    expect(schema.out.find("SchemaError") != std::string::npos, "SchemaError object emitted");
  }

  std::error_code ec;
  std::filesystem::remove_all(tmp, ec);

  if (g_failures == 0) {
    std::cout << "all command line checks passed\n";
    return 0;
  }
  std::cout << g_failures << " command line check(s) failed\n";
  return 1;
}
