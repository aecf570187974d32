#include <stdio.h>

#define MAX(a, b) ((a) > (b) ? (a) : (b))
#define LOOP(n) \
    for (int i = 0; i < (n); i++)

/* Print n stars. */
void stars(int n) {
    LOOP(n) {
        putchar('*');
    }
    putchar('\n');
}
