package fix;

import java.util.ArrayList;

public class Ext extends ArrayList<String> {
    public int twice() {
        return size() * 2;
    }
}
