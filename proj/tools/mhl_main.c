#include <stdio.h>

#include "mhl/mhl.h"

int main(int argc, char** argv) {
  mhl_config* cfg = NULL;
  mhl_status st = mhl_config_parse_args(argc, (const char* const*)argv, &cfg);
  if (st == MHL_HELP_REQUESTED) {
    fputs(mhl_last_error(), stdout);
    return 0;
  }
  if (st != MHL_OK) {
    fprintf(stderr, "mhl: %s\n%s", mhl_last_error(), mhl_usage());
    return 1;
  }

  int exit_code = 1;
  st = mhl_run(cfg, &exit_code);
  fputs(mhl_last_run_summary(), stdout);
  if (st != MHL_OK) {
    fprintf(stderr, "mhl: %s: %s\n", mhl_status_string(st), mhl_last_error());
    exit_code = 1;
  } else if (exit_code == 2) {
    fprintf(stderr, "mhl: some solves did not converge\n");
  }
  mhl_config_free(cfg);
  return exit_code;
}
