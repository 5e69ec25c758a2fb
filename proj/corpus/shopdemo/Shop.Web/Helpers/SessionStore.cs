using System.Collections.Generic;

namespace Shop.Web.Helpers
{
    public static class SessionStore
    {
        private static Dictionary<string, int> values = new Dictionary<string, int>();

        public static int GetInt(string key)
        {
            return values.ContainsKey(key) ? values[key] : 0;
        }
    }
}
