#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

int ghost(const std::string& args) {
  const std::string cmd = std::string(GHOST_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_config(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

const std::string kShipped = GHOST_SOURCE_DIR "/configs/paper.cfg";

}  // namespace

TEST(Cli, ListAndValidate) {
  EXPECT_EQ(ghost("list-scenarios"), 0);
  EXPECT_EQ(ghost("validate --config " + kShipped), 0);
}

TEST(Cli, ExitCodes) {
  const auto out = (std::filesystem::temp_directory_path() / "ghost_cli_out").string();
  EXPECT_EQ(ghost("run sigma-plane --config " + kShipped + " --out " + out), 0);
  EXPECT_EQ(ghost("run fig9 --config " + kShipped + " --out " + out), 2);
  EXPECT_EQ(ghost("run sigma-plane --config " + write_config("ghost_bad.cfg", "d_a = 1mm\n") + " --out " + out), 2);
  EXPECT_EQ(ghost("run sigma-plane --config /nonexistent.cfg --out " + out), 2);
  EXPECT_EQ(ghost("run sigma-plane --config " + kShipped + " --out " + out + " --engine gpu"), 2);
  const auto coarse = write_config("ghost_coarse.cfg", "grid_n = 8192\ngrid_dx = 2um\n");
  EXPECT_EQ(ghost("run sigma-plane --config " + coarse + " --out " + out), 3);
  EXPECT_EQ(ghost("validate --config " + coarse), 3);
  EXPECT_EQ(ghost("run sigma-plane --config " + kShipped + " --out /proc/ghost"), 4);
  EXPECT_EQ(ghost("bogus"), 2);
}
