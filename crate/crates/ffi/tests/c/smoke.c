#include <stdio.h>
#include <string.h>
#include "lcdcode.h"

int main(void) {
    LcdCode *code = NULL;
    if (lcd_code_from_defvec("3: 1 1 1 1 1 1 1", &code) != LCD_STATUS_OK) return 1;
    LcdParams p;
    if (lcd_code_params(code, &p) != LCD_STATUS_OK) return 2;
    bool lcd = true;
    lcd_code_is_lcd(code, &lcd);
    printf("n=%zu k=%zu d=%zu hull=%zu lcd=%d\n", p.n, p.k, p.d, p.hull, (int)lcd);
    lcd_code_free(code);
    if (lcd_code_from_g2m("2 3\n101\n", &code) != LCD_STATUS_PARSE) return 3;
    if (strlen(lcd_last_error()) == 0) return 4;
    return 0;
}
